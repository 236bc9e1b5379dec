#pragma once

#include "pentile/grow.hpp"
#include "pentile/patch.hpp"
#include "pentile/periodicity.hpp"
#include "pentile/sort.hpp"

#include <json.hpp>

#include <string>

namespace pentile {

using Json = nlohmann::ordered_json;

// Every report embeds the configuration it was produced with; the volatile
// fields (timestamp) live under "meta" so comparisons can drop them.
Json meta_json();

Json tolerances_json(const Tolerances& tol);
Json farkas_json(const FarkasCertificate& cert);
Json pentagon_json(const AngleVector& angles, const EdgeVector& edges);

Json patterns_json(const std::vector<CandidatePattern>& patterns, bool deduplicated);
Json sort_report_json(const SortReport& report, const SortOptions& opts);

Json patch_json(const Patch& patch, const GrowResult* grow_result = nullptr);
Json certificate_json(const TorusTiling& torus, const DensityReport& density, int bagina_tile,
                      const std::optional<int>& lemma1_witness, const Json& config);

// Independent re-check of a certificate JSON: rebuilds the geometry from the
// stored poses and lattice and re-verifies every invariant from scratch.
struct VerifyResult {
    bool ok = true;
    std::vector<std::string> checks;    // "name: pass/fail ..."
    std::vector<std::string> failures;
};
VerifyResult verify_certificate(const Json& certificate);

std::string dump_deterministic(const Json& j);

}  // namespace pentile
