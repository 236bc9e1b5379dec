#pragma once

#include "pentile/grow.hpp"
#include "pentile/periodicity.hpp"

#include <optional>
#include <string>

namespace pentile {

struct CertifyOptions {
    int depth = 3;         // first ring depth attempted
    int max_depth = 5;     // deepen up to this if no lattice emerges
    long long budget = 1'000'000;
    bool allow_reflections = true;
    bool corollary1_prune = false;
    Tolerances tol;
};

// grow -> detect_periods -> build_torus -> density/lemma1/bagina.
// A FalsificationError from the checks stage is never caught here.
struct CertifyOutcome {
    enum class Stage { Realize, Grow, Detect, Torus, Checks, Done };
    Stage stage = Stage::Realize;  // first stage that failed, or Done
    std::string message;

    std::optional<Patch> patch;
    GrowResult grow_result;
    int used_depth = 0;

    std::optional<PeriodLattice> lattice;
    std::optional<TorusTiling> torus;
    std::optional<DensityReport> density;
    int bagina_tile = -1;
    std::optional<int> lemma1_witness;

    bool ok() const { return stage == Stage::Done; }
};

const char* to_string(CertifyOutcome::Stage s);

CertifyOutcome certify_pentagon(const AngleVector& angles, const EdgeVector& edges,
                                const CertifyOptions& opts = {});

}  // namespace pentile
