#include "avgkit/serialize.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "avgkit/errors.hpp"

namespace avgkit {

namespace {

std::size_t read_count(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned())
        throw ParseError(std::string("expected a nonnegative integer field '") + key + "'");
    return j.at(key).get<std::size_t>();
}

Vector read_vector(const json& j, std::size_t expected, const char* what) {
    if (!j.is_array() || j.size() != expected)
        throw ParseError(std::string(what) + ": expected an array of length " + std::to_string(expected));
    Vector v;
    v.reserve(expected);
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

json matrix_to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

DenseMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
    const std::size_t rows = read_count(j, "rows");
    const std::size_t cols = read_count(j, "cols");
    if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").size() != rows)
        throw ParseError("matrix: 'entries' must hold " + std::to_string(rows) + " rows");
    std::vector<double> data;
    data.reserve(rows * cols);
    for (const auto& row : j.at("entries")) {
        const Vector r = read_vector(row, cols, "matrix row");
        data.insert(data.end(), r.begin(), r.end());
    }
    try {
        return DenseMatrix(rows, cols, std::move(data));
    } catch (const DomainError& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

json subspace_to_json(const Subspace& s) {
    json vectors = json::array();
    for (std::size_t k = 0; k < s.dim(); ++k) vectors.push_back(s.basis().column(k));
    return {{"ambient_dim", s.ambient_dim()}, {"spanning_vectors", std::move(vectors)}};
}

Subspace subspace_from_json(const json& j, const ToleranceConfig& cfg) {
    if (!j.is_object()) throw ParseError("subspace: expected a JSON object");
    const std::size_t n = read_count(j, "ambient_dim");
    if (!j.contains("spanning_vectors") || !j.at("spanning_vectors").is_array())
        throw ParseError("subspace: missing 'spanning_vectors' array");
    std::vector<Vector> vectors;
    for (const auto& v : j.at("spanning_vectors")) vectors.push_back(read_vector(v, n, "spanning vector"));
    try {
        return Subspace::span(n, vectors, cfg);
    } catch (const DomainError& e) {
        throw ParseError(std::string("subspace: ") + e.what());
    }
}

void to_json(json& j, const ToleranceConfig& cfg) {
    j = {{"eig_tol", cfg.eig_tol},
         {"psd_tol", cfg.psd_tol},
         {"rank_tol", cfg.rank_tol},
         {"cluster_tol", cfg.cluster_tol},
         {"bisect_tol", cfg.bisect_tol}};
}

void from_json(const json& j, ToleranceConfig& cfg) {
    j.at("eig_tol").get_to(cfg.eig_tol);
    j.at("psd_tol").get_to(cfg.psd_tol);
    j.at("rank_tol").get_to(cfg.rank_tol);
    j.at("cluster_tol").get_to(cfg.cluster_tol);
    j.at("bisect_tol").get_to(cfg.bisect_tol);
}

void to_json(json& j, const ModulusCertificate& cert) {
    j = {{"achieving_eigenvalue", cert.achieving_eigenvalue},
         {"psd_margin_at_kappa", cert.psd_margin_at_kappa},
         {"psd_margin_below", cert.psd_margin_below}};
    j["witness"] = cert.witness ? json(*cert.witness) : json(nullptr);
}

void from_json(const json& j, ModulusCertificate& cert) {
    j.at("achieving_eigenvalue").get_to(cert.achieving_eigenvalue);
    j.at("psd_margin_at_kappa").get_to(cert.psd_margin_at_kappa);
    j.at("psd_margin_below").get_to(cert.psd_margin_below);
    if (j.contains("witness") && !j.at("witness").is_null())
        cert.witness = j.at("witness").get<Vector>();
    else
        cert.witness.reset();
}

void to_json(json& j, const ModulusReport& report) {
    j = {{"kappa", report.kappa}, {"route", std::string(to_string(report.route))}, {"d", report.d}};
    j["certificate"] = report.certificate ? json(*report.certificate) : json(nullptr);
}

void from_json(const json& j, ModulusReport& report) {
    j.at("kappa").get_to(report.kappa);
    const auto route = parse_modulus_route(j.at("route").get<std::string>());
    if (!route) throw ParseError("unknown modulus route");
    report.route = *route;
    j.at("d").get_to(report.d);
    if (j.contains("certificate") && !j.at("certificate").is_null())
        report.certificate = j.at("certificate").get<ModulusCertificate>();
    else
        report.certificate.reset();
}

void to_json(json& j, const AngleReport& report) {
    j = {{"cosines", report.cosines},
         {"dim_intersection", report.dim_intersection},
         {"dixmier", report.dixmier},
         {"friedrichs", report.friedrichs}};
}

void from_json(const json& j, AngleReport& report) {
    j.at("cosines").get_to(report.cosines);
    j.at("dim_intersection").get_to(report.dim_intersection);
    j.at("dixmier").get_to(report.dixmier);
    j.at("friedrichs").get_to(report.friedrichs);
}

json load_json_source(const std::string& source) {
    std::string text;
    if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
        text = source;
    } else if (source == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(source);
        if (!in) throw ParseError("cannot open input '" + source + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in '" + source + "': " + e.what());
    }
}

const json& unwrap_instance(const json& doc) {
    if (doc.is_object() && doc.contains("results") && doc.at("results").is_object() &&
        doc.at("results").contains("instance"))
        return doc.at("results").at("instance");
    return doc;
}

}  // namespace avgkit
