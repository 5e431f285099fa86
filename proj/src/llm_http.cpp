#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

#include "law/agents.hpp"
#include "law/error.hpp"

namespace law {

HttpLlmClient::HttpLlmClient(std::string endpoint, std::string api_key, std::string model,
                             std::optional<std::filesystem::path> log_path)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)), model_(std::move(model)), log_path_(std::move(log_path)) {}

std::unique_ptr<HttpLlmClient> HttpLlmClient::from_environment() {
    const char* endpoint = std::getenv("LAW_LLM_ENDPOINT");
    if (!endpoint || !*endpoint) return nullptr;
    const char* key = std::getenv("LAW_LLM_API_KEY");
    const char* model = std::getenv("LAW_LLM_MODEL");
    const char* log = std::getenv("LAW_LLM_LOG");
    std::optional<std::filesystem::path> log_path;
    if (log && *log) log_path = log;
    return std::make_unique<HttpLlmClient>(endpoint, key ? key : "", model ? model : "gpt-3.5-turbo", log_path);
}

std::string HttpLlmClient::generate(const std::string& prompt, size_t max_output) {
    const std::string scheme = "http://";
    if (endpoint_.rfind(scheme, 0) != 0) {
        throw Error("E_CONFIG", "only http:// endpoints are supported", endpoint_);
    }
    auto slash = endpoint_.find('/', scheme.size());
    std::string host = endpoint_.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : endpoint_.substr(slash);

    nlohmann::json req = {{"model", model_},
                          {"messages", {{{"role", "user"}, {"content", prompt}}}},
                          {"max_tokens", max_output},
                          {"temperature", 0}};
    httplib::Client cli(host);
    cli.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = cli.Post(path, headers, req.dump(), "application/json");

    nlohmann::json log_line = {{"request", req}};
    std::string text;
    std::string failure;
    if (!res) {
        failure = "request failed: " + httplib::to_string(res.error());
    } else if (res->status != 200) {
        failure = "status " + std::to_string(res->status);
        log_line["status"] = res->status;
    } else {
        auto body = nlohmann::json::parse(res->body, nullptr, false);
        log_line["response"] = body;
        try {
            text = body.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            failure = "unexpected response shape";
        }
    }
    if (log_path_) {
        std::lock_guard lock(log_mu_);
        std::ofstream(*log_path_, std::ios::app) << log_line.dump() << "\n";
    }
    if (!failure.empty()) throw Error("E_LLM_FAILURE", failure, endpoint_);
    return text;
}

}  // namespace law
