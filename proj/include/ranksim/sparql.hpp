#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ranksim/errors.hpp"

namespace ranksim {

/// An RDF term as it appears in SPARQL JSON results.
struct Term {
    enum class Kind { Iri, Literal, BlankNode };
    Kind kind = Kind::Iri;
    std::string value;
    std::string datatype; // optional
    std::string lang;     // optional

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.value == b.value && a.datatype == b.datatype &&
               a.lang == b.lang;
    }
};

/// SELECT results: projected variables plus rows in exactly the order they
/// were received (ORDER BY semantics depend on it).
struct BindingsTable {
    std::vector<std::string> variables;
    std::vector<std::map<std::string, Term>> rows;

    friend bool operator==(const BindingsTable& a, const BindingsTable& b) {
        return a.variables == b.variables && a.rows == b.rows;
    }
};

struct EndpointConfig {
    enum class Mode { Live, Record, Replay };

    std::string url;
    double timeout_s = 30.0;
    int max_retries = 3;
    int backoff_ms = 500;
    Mode mode = Mode::Live;
    std::filesystem::path fixture_dir; // used by Record and Replay

    void validate() const;
};

/// Whitespace-insensitive query fingerprint: runs of whitespace collapse to
/// one space, the result is trimmed and FNV-1a-64 hashed (16 hex digits).
std::string normalize_query_digest(const std::string& query);

/// SPARQL 1.1 protocol request for a SELECT query: GET with the query
/// urlencoded, switching to a form-encoded POST when the query exceeds
/// 2000 bytes.
struct HttpRequest {
    std::string method; // GET | POST
    std::string url;    // endpoint base
    std::string target; // path (+ query string for GET)
    std::string body;   // form body for POST
    std::string content_type;
    std::string accept = "application/sparql-results+json";
};

HttpRequest build_select_request(const std::string& endpoint_url, const std::string& query);

/// Transport seam; tests inject counting or failing implementations.
class Transport {
public:
    struct Response {
        int status = 0;
        std::string body;
    };

    virtual ~Transport() = default;
    /// Performs the request; throws std::runtime_error on connection failure.
    virtual Response execute(const HttpRequest& request) = 0;
};

std::shared_ptr<Transport> make_http_transport(double timeout_s);

/// Parses an application/sparql-results+json document. Malformed input is
/// rejected with the byte offset of the error.
BindingsTable parse_sparql_results(const std::string& body);

/// Minimal SELECT-only SPARQL client with record/replay fixtures. A client
/// handle may be shared across threads; record-mode fixture writes are
/// serialized.
class SparqlClient {
public:
    explicit SparqlClient(EndpointConfig cfg, std::shared_ptr<Transport> transport = nullptr);

    BindingsTable execute_select(const std::string& query) const;

    const EndpointConfig& config() const { return cfg_; }

private:
    Transport::Response perform(const std::string& query) const;

    EndpointConfig cfg_;
    std::shared_ptr<Transport> transport_;
};

} // namespace ranksim
