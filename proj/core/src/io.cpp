#include "rankleap/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rankleap {

namespace {

using Json = nlohmann::ordered_json;

Json complex_to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

Cx complex_from_json(const Json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string(where) + ": entry must be a two-element number array");
    const Cx z{j[0].get<double>(), j[1].get<double>()};
    if (!is_finite(z)) throw ParseError(std::string(where) + ": non-finite entry rejected");
    return z;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& rows, std::size_t r, std::size_t c, const char* where) {
    if (!rows.is_array() || rows.size() != r)
        throw ParseError(std::string(where) + ": expected " + std::to_string(r) + " rows");
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw ParseError(std::string(where) + ": row " + std::to_string(i) + " must have " +
                             std::to_string(c) + " entries");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = complex_from_json(rows[i][j], where);
    }
    return m;
}

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (Cx z : v) arr.push_back(complex_to_json(z));
    return arr;
}

Json finite_or_string(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "infinity" : "-infinity";
}

Json tolerances_to_json(const Tolerances& t) {
    Json j;
    j["gap_tol_rel"] = t.gap_tol_rel;
    j["rank_tol_rel"] = t.rank_tol_rel;
    j["sing_tol_rel"] = t.sing_tol_rel;
    j["sim_tol"] = t.sim_tol;
    j["comm_tol"] = t.comm_tol;
    j["diag_tol"] = t.diag_tol;
    j["cert_tol"] = t.cert_tol;
    j["max_tries"] = t.max_tries;
    j["max_attempts"] = t.max_attempts;
    return j;
}

Json decomposition_to_json(const CPDecomposition& d) {
    Json terms = Json::array();
    for (const CPTerm& t : d.terms) {
        Json term;
        term["x"] = vector_to_json(t.x);
        term["y"] = vector_to_json(t.y);
        term["z"] = vector_to_json(t.z);
        terms.push_back(std::move(term));
    }
    return terms;
}

Json certificate_to_json(const RankCertificate& cert) {
    Json j;
    j["document"] = "rank_certificate";
    j["verdict"] = to_string(cert.verdict);
    j["m"] = cert.m;
    j["seed"] = cert.seed;
    j["tolerances"] = tolerances_to_json(cert.tolerances);
    j["preprocessing"] = cert.preprocessing ? matrix_to_json(*cert.preprocessing) : Json();
    j["justification"] = cert.justification;
    if (cert.verdict == RankVerdict::rank_equals_m) {
        j["reeval_error"] = cert.reeval_error;
        j["basis"] = cert.basis ? matrix_to_json(*cert.basis) : Json();
        j["decomposition"] = cert.decomposition ? decomposition_to_json(*cert.decomposition)
                                                : Json();
    } else if (cert.verdict == RankVerdict::rank_exceeds_m) {
        switch (cert.obstruction) {
            case SimDiagReport::Obstruction::commutator:
                j["obstruction"] = "commutator_violation";
                j["obstruction_slices"] =
                    Json::array({cert.obstruction_slice_i, cert.obstruction_slice_j});
                j["commutator_norm"] = cert.commutator_norm;
                break;
            case SimDiagReport::Obstruction::non_diagonalizable:
                j["obstruction"] = "non_diagonalizable_slice_ratio";
                j["obstruction_slices"] = Json::array({cert.obstruction_slice_i});
                break;
            case SimDiagReport::Obstruction::none:
                j["obstruction"] = Json();
                break;
        }
        if (cert.defect_witness) {
            Json w;
            w["eigenvalue"] = complex_to_json(cert.defect_witness->eigenvalue);
            w["algebraic"] = cert.defect_witness->algebraic;
            w["geometric"] = cert.defect_witness->geometric;
            j["defect_witness"] = std::move(w);
        }
    }
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string serialize_tensor(const Tensor3& t) {
    Json j;
    j["dims"] = Json::array({t.dim_l(), t.dim_m(), t.dim_n()});
    Json slices = Json::array();
    for (std::size_t r = 0; r < t.dim_n(); ++r) slices.push_back(matrix_to_json(t.slice(r)));
    j["slices"] = std::move(slices);
    return dump(j);
}

Tensor3 parse_tensor(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("tensor document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dims") || !j.contains("slices"))
        throw ParseError("tensor document: expected object with dims and slices");
    const Json& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 3)
        throw ParseError("tensor document: dims must be [l, m, n]");
    for (const auto& d : dims)
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
            throw ParseError("tensor document: dims must be positive integers");
    const auto l = dims[0].get<std::size_t>();
    const auto m = dims[1].get<std::size_t>();
    const auto n = dims[2].get<std::size_t>();

    const Json& slices = j["slices"];
    if (!slices.is_array() || slices.size() != n)
        throw ParseError("tensor document: expected " + std::to_string(n) + " slices");
    std::vector<Matrix> mats;
    mats.reserve(n);
    for (std::size_t r = 0; r < n; ++r) mats.push_back(matrix_from_json(slices[r], l, m, "slice"));
    return Tensor3::from_slices(std::move(mats));
}

std::string serialize_matrix(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = matrix_to_json(m);
    return dump(j);
}

Matrix parse_matrix(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix document: expected object with rows, cols, entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw ParseError("matrix document: rows/cols must be positive integers");
    const auto r = j["rows"].get<std::size_t>();
    const auto c = j["cols"].get<std::size_t>();
    if (r == 0 || c == 0) throw ParseError("matrix document: rows/cols must be positive");
    return matrix_from_json(j["entries"], r, c, "entries");
}

Tensor3 load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tensor file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_tensor(buf.str());
}

Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
    if (!out) throw ParseError("failed writing: " + path);
}

std::string certificate_document(const RankCertificate& cert) {
    return dump(certificate_to_json(cert));
}

std::string approx_document(const RankNApproxResult& result, bool embed_tensor) {
    Json j;
    j["document"] = "rank_n_approximation";
    j["deviation"] = result.deviation;
    j["attempts"] = result.attempts;
    j["seed"] = result.seed;
    j["certificate"] = certificate_to_json(result.certificate);
    if (embed_tensor) {
        Json t;
        t["dims"] = Json::array({result.approximation.dim_l(), result.approximation.dim_m(),
                                 result.approximation.dim_n()});
        Json slices = Json::array();
        for (std::size_t r = 0; r < result.approximation.dim_n(); ++r)
            slices.push_back(matrix_to_json(result.approximation.slice(r)));
        t["slices"] = std::move(slices);
        j["approximation"] = std::move(t);
    }
    return dump(j);
}

std::string als_document(const ALSReport& report) {
    Json j;
    j["document"] = "als_report";
    j["target_rank"] = report.target_rank;
    j["decision"] = report.best_stable_residual &&
                            *report.best_stable_residual <= report.oracle_tol
                        ? "at_most_r"
                        : "no_fit_found";
    j["best_residual"] = finite_or_string(report.best_residual);
    j["best_stable_residual"] =
        report.best_stable_residual ? Json(*report.best_stable_residual) : Json();
    j["restarts"] = report.restarts;
    j["restarts_run"] = report.restarts_run;
    j["diverging_restarts"] = report.diverging_restarts;
    j["iterations_used"] = report.iterations_used;
    j["oracle_tol"] = report.oracle_tol;
    j["seed"] = report.seed;
    j["decomposition"] =
        report.decomposition ? decomposition_to_json(*report.decomposition) : Json();
    return dump(j);
}

std::string leap_document(const LeapFamily& fam, const std::vector<std::uint64_t>& ks,
                          const std::vector<double>& deviations,
                          const std::vector<RankCertificate>& member_certs,
                          const RankCertificate& limit_cert) {
    Json j;
    j["document"] = "leap_family";
    j["n"] = fam.n;
    j["seed"] = fam.seed;
    Json eig = Json::array();
    for (Cx z : fam.eigenvalues) eig.push_back(complex_to_json(z));
    j["eigenvalues"] = std::move(eig);
    j["claimed_rank_limit"] = fam.claimed_rank_limit();
    j["certified_rank_member"] = fam.certified_rank_member();
    j["max_rank_value"] = max_rank_value(2 * fam.n);

    Json members = Json::array();
    for (std::size_t i = 0; i < ks.size(); ++i) {
        Json entry;
        entry["k"] = ks[i];
        entry["deviation_l1"] = deviations[i];
        entry["certificate"] = certificate_to_json(member_certs[i]);
        members.push_back(std::move(entry));
    }
    j["members"] = std::move(members);
    j["limit_certificate"] = certificate_to_json(limit_cert);
    return dump(j);
}

}  // namespace rankleap
