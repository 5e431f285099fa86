#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "law/workspace.hpp"

namespace httplib {
class Server;
}

namespace law {

/// {code, message, locus} body for an error.
nlohmann::json problem_detail(const std::string& code, const std::string& message, const std::string& locus = {});
/// HTTP status for an error code.
int status_for(const std::string& code);

/// JSON API over one workspace. Queries run against a snapshot; a re-ingest
/// builds a new workspace and swaps it in, so in-flight queries finish on the
/// old one.
class Service {
public:
    Service(std::shared_ptr<const Workspace> workspace, Config config);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    std::shared_ptr<const Workspace> snapshot() const;
    void swap(std::shared_ptr<const Workspace> workspace);

    /// Blocks until stop(). Returns false when the port cannot be bound.
    bool listen(const std::string& host, int port);
    /// Binds an ephemeral port and returns it (or -1); serve with run().
    int bind_any(const std::string& host);
    bool run();
    void stop();
    void wait_until_ready() const;

private:
    void routes();

    Config config_;
    mutable std::mutex mu_;
    std::shared_ptr<const Workspace> workspace_;
    std::mutex ingest_mu_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace law
