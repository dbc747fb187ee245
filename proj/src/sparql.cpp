#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "ranksim/sparql.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace ranksim {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size() * 3);
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

// scheme://host[:port] and path
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint url missing scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::mutex g_fixture_mutex;

} // namespace

void EndpointConfig::validate() const {
    if (!(timeout_s > 0.0)) throw ConfigError("endpoint: timeout must be > 0");
    if (max_retries < 0) throw ConfigError("endpoint: max_retries must be >= 0");
    if (backoff_ms < 0) throw ConfigError("endpoint: backoff must be >= 0");
    if (mode == Mode::Replay) {
        if (fixture_dir.empty() || !fs::is_directory(fixture_dir))
            throw ConfigError("endpoint: replay directory does not exist: " + fixture_dir.string());
    } else {
        if (url.empty()) throw ConfigError("endpoint: url required outside replay mode");
        if (mode == Mode::Record && fixture_dir.empty())
            throw ConfigError("endpoint: record mode needs a fixture directory");
    }
}

std::string normalize_query_digest(const std::string& query) {
    std::string canon;
    canon.reserve(query.size());
    bool in_ws = false;
    for (char c : query) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in_ws = true;
            continue;
        }
        if (in_ws && !canon.empty()) canon.push_back(' ');
        in_ws = false;
        canon.push_back(c);
    }
    // FNV-1a 64-bit; stable across platforms, unlike std::hash.
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HttpRequest build_select_request(const std::string& endpoint_url, const std::string& query) {
    auto [base, path] = split_url(endpoint_url);
    HttpRequest req;
    req.url = base;
    if (query.size() <= 2000) {
        req.method = "GET";
        req.target = path + "?query=" + url_encode(query);
    } else {
        req.method = "POST";
        req.target = path;
        req.body = "query=" + url_encode(query);
        req.content_type = "application/x-www-form-urlencoded";
    }
    return req;
}

namespace {

class HttpTransport : public Transport {
public:
    explicit HttpTransport(double timeout_s) : timeout_s_(timeout_s) {}

    Response execute(const HttpRequest& request) override {
        httplib::Client client(request.url);
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<int>(timeout_s_ * 1000)));
        client.set_read_timeout(std::chrono::milliseconds(static_cast<int>(timeout_s_ * 1000)));
        client.set_follow_location(true);
        httplib::Headers headers{{"Accept", request.accept}};
        httplib::Result res =
            request.method == "GET"
                ? client.Get(request.target, headers)
                : client.Post(request.target, headers, request.body, request.content_type);
        if (!res)
            throw std::runtime_error("connection to " + request.url + " failed: " +
                                     httplib::to_string(res.error()));
        return Response{res->status, res->body};
    }

private:
    double timeout_s_;
};

} // namespace

std::shared_ptr<Transport> make_http_transport(double timeout_s) {
    return std::make_shared<HttpTransport>(timeout_s);
}

BindingsTable parse_sparql_results(const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw DataError("sparql results: parse error at byte " + std::to_string(e.byte) + ": " +
                        e.what());
    }
    try {
        BindingsTable table;
        if (!doc.contains("head") || !doc["head"].contains("vars"))
            throw DataError("sparql results: missing head.vars");
        for (const auto& v : doc["head"]["vars"]) table.variables.push_back(v.get<std::string>());
        if (!doc.contains("results") || !doc["results"].contains("bindings"))
            throw DataError("sparql results: missing results.bindings");
        for (const auto& row : doc["results"]["bindings"]) {
            std::map<std::string, Term> bound;
            for (auto it = row.begin(); it != row.end(); ++it) {
                const auto& cell = it.value();
                Term term;
                std::string type = cell.at("type").get<std::string>();
                if (type == "uri")
                    term.kind = Term::Kind::Iri;
                else if (type == "bnode")
                    term.kind = Term::Kind::BlankNode;
                else if (type == "literal" || type == "typed-literal")
                    term.kind = Term::Kind::Literal;
                else
                    throw DataError("sparql results: unknown term type '" + type + "'");
                term.value = cell.at("value").get<std::string>();
                if (cell.contains("datatype")) term.datatype = cell["datatype"].get<std::string>();
                if (cell.contains("xml:lang")) term.lang = cell["xml:lang"].get<std::string>();
                bound[it.key()] = std::move(term);
            }
            table.rows.push_back(std::move(bound));
        }
        return table;
    } catch (const json::exception& e) {
        throw DataError(std::string("sparql results: malformed document: ") + e.what());
    }
}

SparqlClient::SparqlClient(EndpointConfig cfg, std::shared_ptr<Transport> transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {
    cfg_.validate();
    if (!transport_ && cfg_.mode != EndpointConfig::Mode::Replay)
        transport_ = make_http_transport(cfg_.timeout_s);
}

Transport::Response SparqlClient::perform(const std::string& query) const {
    HttpRequest request = build_select_request(cfg_.url, query);
    const int attempts_allowed = cfg_.max_retries + 1;
    std::string last_error;
    for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
        try {
            Transport::Response res = transport_->execute(request);
            if (res.status >= 200 && res.status < 300) return res;
            last_error = "HTTP " + std::to_string(res.status);
        } catch (const std::exception& e) {
            last_error = e.what();
        }
        if (attempt < attempts_allowed) {
            auto delay = std::chrono::milliseconds(cfg_.backoff_ms << (attempt - 1));
            if (delay.count() > 0) std::this_thread::sleep_for(delay);
        }
    }
    throw TransportError("sparql: " + last_error + " after " + std::to_string(attempts_allowed) +
                             " attempt(s); query digest " + normalize_query_digest(query),
                         attempts_allowed);
}

BindingsTable SparqlClient::execute_select(const std::string& query) const {
    if (query.empty()) throw DataError("execute_select: empty query");
    const std::string digest = normalize_query_digest(query);

    if (cfg_.mode == EndpointConfig::Mode::Replay) {
        fs::path file = cfg_.fixture_dir / (digest + ".json");
        if (!fs::exists(file))
            throw ReplayMissError("sparql replay: no fixture for digest " + digest + " under " +
                                  cfg_.fixture_dir.string());
        return parse_sparql_results(read_file(file));
    }

    Transport::Response res = perform(query);

    if (cfg_.mode == EndpointConfig::Mode::Record) {
        std::lock_guard<std::mutex> lock(g_fixture_mutex);
        fs::create_directories(cfg_.fixture_dir);
        {
            std::ofstream out(cfg_.fixture_dir / (digest + ".json"), std::ios::binary);
            out << res.body;
        }
        fs::path manifest_path = cfg_.fixture_dir / "manifest.json";
        json manifest = json::object();
        if (fs::exists(manifest_path)) {
            try {
                manifest = json::parse(read_file(manifest_path));
            } catch (const json::parse_error&) {
                manifest = json::object();
            }
        }
        manifest[digest] = query;
        std::ofstream out(manifest_path, std::ios::binary);
        out << manifest.dump(2) << "\n";
    }
    return parse_sparql_results(res.body);
}

} // namespace ranksim
