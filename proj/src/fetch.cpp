#include "law/fetch.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "law/error.hpp"

namespace law {

double SteadyClock::now() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void SteadyClock::sleep_for(double seconds) {
    if (seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

TokenBucket::TokenBucket(double rate, double burst, Clock& clock)
    : rate_(rate), burst_(burst), tokens_(burst), last_(clock.now()), clock_(clock) {
    if (!(rate > 0) || !(burst >= 1)) throw Error("E_CONFIG", "token bucket needs rate > 0 and burst >= 1");
}

void TokenBucket::acquire() {
    std::lock_guard lock(mu_);
    for (;;) {
        double t = clock_.now();
        tokens_ = std::min(burst_, tokens_ + (t - last_) * rate_);
        last_ = t;
        if (tokens_ >= 1.0 - 1e-9) {
            tokens_ -= 1.0;
            return;
        }
        clock_.sleep_for((1.0 - tokens_) / rate_);
    }
}

FetchResponse HttpTransport::get(const std::string& uri, const std::map<std::string, std::string>& headers) {
    const std::string scheme = "http://";
    if (uri.rfind(scheme, 0) != 0) throw Error("E_NETWORK", "only http:// uris are supported", uri);
    size_t slash = uri.find('/', scheme.size());
    std::string host = uri.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : uri.substr(slash);

    httplib::Client client(host);
    auto secs = static_cast<time_t>(timeout_);
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = client.Get(path, h);
    FetchResponse out;
    if (!res) return out;
    out.status = res->status;
    out.body = res->body;
    if (res->has_header("Retry-After")) {
        try {
            out.retry_after = std::stod(res->get_header_value("Retry-After"));
        } catch (const std::exception&) {
        }
    }
    return out;
}

bool is_throttle_status(int status) { return status == 429 || status == 503; }

std::string contract_id_from_uri(const std::string& uri) {
    std::string s = uri;
    if (auto q = s.find_first_of("?#"); q != std::string::npos) s.resize(q);
    while (!s.empty() && s.back() == '/') s.pop_back();
    if (auto slash = s.rfind('/'); slash != std::string::npos) s = s.substr(slash + 1);
    if (auto dot = s.rfind('.'); dot != std::string::npos && dot > 0) s.resize(dot);
    std::string out;
    for (char c : s) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
        out += ok ? c : '_';
    }
    if (out.empty()) throw Error("E_NETWORK", "cannot derive a contract id", uri);
    return out;
}

namespace {

std::filesystem::path checkpoint_path(const std::filesystem::path& root) { return root / "fetch_checkpoint.json"; }

void save_checkpoint(const std::filesystem::path& root, const std::vector<std::string>& done) {
    nlohmann::json j = {{"completed", done}};
    store::write_file_atomic(checkpoint_path(root), j.dump(1) + "\n");
}

}  // namespace

std::vector<std::string> load_checkpoint(const std::filesystem::path& corpus_root) {
    auto p = checkpoint_path(corpus_root);
    if (!std::filesystem::exists(p)) return {};
    try {
        return nlohmann::json::parse(store::read_file(p)).at("completed").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("E_IO", std::string("bad checkpoint: ") + e.what(), p.string());
    }
}

FetchReport fetch_remote(const std::vector<std::string>& uris, const FetchOptions& options, Transport& transport,
                         Clock& clock) {
    if (!(options.rate_limit > 0) || options.rate_limit > 10.0) {
        throw Error("E_CONFIG", "rate limit must be in (0, 10] requests per second");
    }
    if (options.user_agent.empty()) throw Error("E_CONFIG", "a client identification header is required");
    if (options.max_attempts < 1) throw Error("E_CONFIG", "max_attempts must be >= 1");

    FetchReport report;
    if (uris.empty()) return report;

    std::vector<std::string> done;
    if (options.corpus_root) {
        std::filesystem::create_directories(*options.corpus_root);
        done = load_checkpoint(*options.corpus_root);
    }
    std::set<std::string> finished(done.begin(), done.end());

    TokenBucket bucket(options.rate_limit, 1.0, clock);
    const std::map<std::string, std::string> headers = {{"User-Agent", options.user_agent},
                                                        {"Accept-Encoding", "identity"}};

    for (const auto& uri : uris) {
        if (finished.count(uri)) {
            report.skipped.push_back(uri);
            continue;
        }
        double backoff = options.backoff_initial;
        for (int attempt = 1;; ++attempt) {
            bucket.acquire();
            FetchAttempt log{uri, attempt, 0, clock.now()};
            FetchResponse res;
            try {
                res = transport.get(uri, headers);
            } catch (const Error&) {
                res.status = 0;
            }
            log.status = res.status;
            report.attempts.push_back(log);

            if (res.status >= 200 && res.status < 300) {
                ContractDoc doc;
                doc.contract_id = contract_id_from_uri(uri);
                doc.source_uri = uri;
                doc.raw_markup = std::move(res.body);
                if (options.corpus_root) {
                    store::save_contract(*options.corpus_root, doc);
                    done.push_back(uri);
                    finished.insert(uri);
                    save_checkpoint(*options.corpus_root, done);
                }
                report.documents.push_back(std::move(doc));
                break;
            }
            if (!is_throttle_status(res.status)) {
                throw Error("E_NETWORK",
                            res.status == 0 ? "connection failed" : "unexpected status " + std::to_string(res.status),
                            uri);
            }
            if (attempt >= options.max_attempts) {
                throw Error("E_THROTTLED", "still throttled after " + std::to_string(attempt) + " attempts", uri);
            }
            double wait = std::min(options.backoff_max, std::max(backoff, res.retry_after.value_or(0.0)));
            clock.sleep_for(wait);
            backoff = std::min(options.backoff_max, backoff * 2);
        }
    }
    return report;
}

FetchReport fetch_remote(const std::vector<std::string>& uris, const FetchOptions& options) {
    HttpTransport transport;
    SteadyClock clock;
    return fetch_remote(uris, options, transport, clock);
}

}  // namespace law
