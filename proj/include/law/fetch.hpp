#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "law/corpus.hpp"

namespace law {

/// Seconds on some monotonic scale; tests substitute a manual clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual double now() = 0;
    virtual void sleep_for(double seconds) = 0;
};

class SteadyClock final : public Clock {
public:
    double now() override;
    void sleep_for(double seconds) override;
};

class ManualClock final : public Clock {
public:
    double now() override { return now_; }
    void sleep_for(double seconds) override {
        if (seconds > 0) now_ += seconds;
    }

private:
    double now_ = 0.0;
};

/// Token bucket with capacity `burst`, refilled at `rate` tokens per second.
/// Starts full.
class TokenBucket {
public:
    TokenBucket(double rate, double burst, Clock& clock);
    void acquire();

private:
    double rate_;
    double burst_;
    double tokens_;
    double last_;
    Clock& clock_;
    std::mutex mu_;
};

struct FetchResponse {
    int status = 0;  // 0 when the connection failed
    std::string body;
    std::optional<double> retry_after;  // seconds, from the Retry-After header
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual FetchResponse get(const std::string& uri, const std::map<std::string, std::string>& headers) = 0;
};

/// Plain http:// via httplib.
class HttpTransport final : public Transport {
public:
    explicit HttpTransport(double timeout_seconds = 30.0) : timeout_(timeout_seconds) {}
    FetchResponse get(const std::string& uri, const std::map<std::string, std::string>& headers) override;

private:
    double timeout_;
};

struct FetchOptions {
    double rate_limit = 8.0;  // requests per second, at most 10
    std::string user_agent;   // required client identification
    int max_attempts = 5;
    double backoff_initial = 0.5;  // seconds, doubled per retry
    double backoff_max = 30.0;
    std::optional<std::filesystem::path> corpus_root;  // persist documents and checkpoint here
};

struct FetchAttempt {
    std::string uri;
    int attempt = 0;  // 1-based
    int status = 0;
    double at = 0.0;  // clock time of the request
};

struct FetchReport {
    std::vector<ContractDoc> documents;
    std::vector<FetchAttempt> attempts;
    std::vector<std::string> skipped;  // already completed per checkpoint
};

bool is_throttle_status(int status);

/// Contract id for a fetched document: last path segment without extension,
/// reduced to [A-Za-z0-9_.-].
std::string contract_id_from_uri(const std::string& uri);

/// Fetches uris in order, pacing every request (retries included) through a
/// token bucket. Throttle statuses (429, 503) are retried with exponential
/// backoff; other non-2xx statuses and connection failures raise E_NETWORK,
/// exhausted retries raise E_THROTTLED. With a corpus root each document is
/// saved as it arrives and fetch_checkpoint.json lists finished uris, so a
/// rerun skips them.
FetchReport fetch_remote(const std::vector<std::string>& uris, const FetchOptions& options, Transport& transport,
                         Clock& clock);
FetchReport fetch_remote(const std::vector<std::string>& uris, const FetchOptions& options);

std::vector<std::string> load_checkpoint(const std::filesystem::path& corpus_root);

}  // namespace law
