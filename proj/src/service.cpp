#include "law/service.hpp"

#include "httplib.h"
#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

using nlohmann::json;

json problem_detail(const std::string& code, const std::string& message, const std::string& locus) {
    return {{"code", code}, {"message", message}, {"locus", locus}};
}

int status_for(const std::string& code) {
    if (code == "E_BAD_QUERY" || code == "E_BAD_REQUEST" || code == "E_CONFIG") return 400;
    if (code == "E_UNKNOWN_ENTITY" || code == "E_UNKNOWN_CONTRACT" || code == "E_NOT_FOUND") return 404;
    if (code == "E_EXHAUSTED") return 422;
    if (code == "E_BUSY") return 409;
    return 500;
}

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_problem(httplib::Response& res, const std::string& code, const std::string& message,
                  const std::string& locus = {}) {
    res.status = status_for(code);
    res.set_content(problem_detail(code, message, locus).dump(), "application/problem+json");
}

json date_or_null(const std::optional<CalendarDate>& d) { return d ? json(to_string(*d)) : json(nullptr); }

json contract_summary(const Workspace& ws, const ContractDoc& d) {
    json j = {{"contract_id", d.contract_id},
              {"accession_no", d.accession_no},
              {"source_uri", d.source_uri},
              {"sections", d.sections.size()}};
    if (const auto* row = ws.cache().find(d.contract_id)) {
        j["effective_date"] = date_or_null(row->effective);
        j["master_date"] = date_or_null(row->master);
        j["dated_date"] = date_or_null(row->dated);
        j["termination_date"] = date_or_null(row->termination);
        j["evergreen"] = row->evergreen ? json(*row->evergreen) : json(nullptr);
        j["is_master"] = row->is_master ? json(*row->is_master) : json(nullptr);
        j["master_id"] = row->master_id;
        json parties = json::array();
        for (const auto& p : row->parties) parties.push_back({{"role", to_string(p.role)}, {"name", p.name}});
        j["parties"] = parties;
    }
    return j;
}

json section_json(const ContractDoc& d, const SectionSpan& s, double score) {
    return {{"contract_id", d.contract_id}, {"ordinal", s.ordinal},        {"heading", s.heading_text},
            {"label", s.title_label},       {"label_score", score},         {"start", s.start_offset},
            {"end", s.end_offset},          {"text", s.body_text}};
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        send_problem(res, e.code(), e.what(), e.locus());
    } catch (const json::exception& e) {
        send_problem(res, "E_BAD_REQUEST", std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
        send_problem(res, "E_INTERNAL", e.what());
    }
}

}  // namespace

Service::Service(std::shared_ptr<const Workspace> workspace, Config config)
    : config_(std::move(config)), workspace_(std::move(workspace)), server_(std::make_unique<httplib::Server>()) {
    routes();
}

Service::~Service() { stop(); }

std::shared_ptr<const Workspace> Service::snapshot() const {
    std::lock_guard lock(mu_);
    return workspace_;
}

void Service::swap(std::shared_ptr<const Workspace> workspace) {
    std::lock_guard lock(mu_);
    workspace_ = std::move(workspace);
}

bool Service::listen(const std::string& host, int port) { return server_->listen(host, port); }
int Service::bind_any(const std::string& host) { return server_->bind_to_any_port(host); }
bool Service::run() { return server_->listen_after_bind(); }
void Service::stop() {
    if (server_) server_->stop();
}
void Service::wait_until_ready() const { server_->wait_until_ready(); }

void Service::routes() {
    auto& s = *server_;

    s.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
        auto ws = snapshot();
        send_json(res, {{"status", "ok"},
                        {"contracts", ws->documents().size()},
                        {"sections", ws->index().size()},
                        {"corpus_digest", ws->cache().corpus_digest},
                        {"cache_errors", ws->cache().errors.size()}});
    });

    s.Get("/contracts", [this](const httplib::Request&, httplib::Response& res) {
        auto ws = snapshot();
        json out = json::array();
        for (const auto& d : ws->documents()) out.push_back(contract_summary(*ws, d));
        send_json(res, out);
    });

    s.Get("/contracts/:id", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto ws = snapshot();
            const auto& id = req.path_params.at("id");
            const ContractDoc* d = ws->document(id);
            if (!d) throw Error("E_UNKNOWN_CONTRACT", "no contract " + id, id);
            json j = contract_summary(*ws, *d);
            j["plain_text"] = d->plain_text;
            json secs = json::array();
            for (const auto& sec : d->sections) {
                secs.push_back({{"ordinal", sec.ordinal},
                                {"heading", sec.heading_text},
                                {"label", sec.title_label},
                                {"start", sec.start_offset},
                                {"end", sec.end_offset}});
            }
            j["section_list"] = secs;
            auto f = ws->cache().facts.find(id);
            if (f != ws->cache().facts.end()) {
                j["lifecycle_basis"] = f->second.basis;
                j["citations"] = f->second.cite;
            }
            send_json(res, j);
        });
    });

    s.Get("/contracts/:id/sections", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto ws = snapshot();
            const auto& id = req.path_params.at("id");
            const ContractDoc* d = ws->document(id);
            if (!d) throw Error("E_UNKNOWN_CONTRACT", "no contract " + id, id);
            json out = json::array();
            if (req.has_param("clause")) {
                for (const auto* ls : ws->sections_for(id, to_lower(trim(req.get_param_value("clause"))))) {
                    out.push_back(section_json(*d, ls->section, ls->label_score));
                }
            } else {
                for (const auto* ls : ws->index().contract_sections(id)) {
                    out.push_back(section_json(*d, ls->section, ls->label_score));
                }
            }
            send_json(res, out);
        });
    });

    s.Get("/cache.csv", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(write_cache_csv(snapshot()->cache().rows), "text/csv; charset=utf-8");
    });

    s.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::parse_error& e) {
                throw Error("E_BAD_REQUEST", std::string("body is not JSON: ") + e.what());
            }
            auto query = plan::query_from_json(body);
            auto ws = snapshot();
            send_json(res, ws->answer(query).to_json());
        });
    });

    s.Post("/admin/ingest", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            std::unique_lock lock(ingest_mu_, std::try_to_lock);
            if (!lock.owns_lock()) throw Error("E_BUSY", "an ingest is already running");
            auto current = snapshot();
            std::filesystem::path root = current->root();
            if (!req.body.empty()) {
                json body = json::parse(req.body);
                if (body.contains("path")) root = body.at("path").get<std::string>();
            }
            if (root.empty()) throw Error("E_BAD_REQUEST", "workspace has no directory; pass {\"path\": ...}");
            size_t n = ingest_corpus(root, root, config_.workers);
            auto fresh = Workspace::open(root, config_);
            fresh->index().save(root / "index.json");
            save_cache(root, fresh->cache());
            swap(fresh);
            send_json(res, {{"contracts", n}, {"corpus_digest", fresh->cache().corpus_digest}});
        });
    });

    s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        if (res.status == 404) {
            send_problem(res, "E_NOT_FOUND", "no route " + req.method + " " + req.path, req.path);
        }
    });
}

}  // namespace law
