#pragma once

#include <string>

#include "rankleap/approx.hpp"
#include "rankleap/oracle.hpp"

namespace rankleap {

// Canonical tensor document: {"dims": [l, m, n], "slices": [...]} where
// slices holds n arrays of l rows of m entries and every entry is a
// two-element array [re, im]. Matrix documents are {"rows": r, "cols": c,
// "entries": [...]} with the same entry encoding. Serialization is
// deterministic (fixed key order, shortest round-trip number formatting),
// and parsers reject non-finite values and shape inconsistencies.

std::string serialize_tensor(const Tensor3& t);
Tensor3 parse_tensor(const std::string& text);

std::string serialize_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text);

Tensor3 load_tensor(const std::string& path);
Matrix load_matrix(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// Report documents (stable key order, deterministic given fixed seeds).

std::string certificate_document(const RankCertificate& cert);
std::string approx_document(const RankNApproxResult& result, bool embed_tensor);
std::string als_document(const ALSReport& report);

/// Family report: construction metadata, one entry per requested k with the
/// member-to-limit l1 distance and the member certificate, plus the limit
/// certificate and the maximal-rank cross-check.
std::string leap_document(const LeapFamily& fam, const std::vector<std::uint64_t>& ks,
                          const std::vector<double>& deviations,
                          const std::vector<RankCertificate>& member_certs,
                          const RankCertificate& limit_cert);

}  // namespace rankleap
