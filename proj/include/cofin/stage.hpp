#ifndef COFIN_STAGE_HPP
#define COFIN_STAGE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cofin/analysis.hpp"
#include "cofin/forcing.hpp"
#include "cofin/orbits.hpp"

namespace cofin {

struct StageStepParams {
    std::uint64_t alpha_range = 8;     // domain/range hits per piece
    std::uint64_t word_len = 2;        // promised good words up to this length
    std::uint64_t hits = 8;            // function/target hits on the case piece
    std::uint64_t depth = 3;           // hitability certificate depth
    std::uint64_t search_bound = 65536;
};

struct PieceBuild {
    std::uint64_t piece_orbit = 0;    // orbit index of the piece
    std::vector<DenseSpec> schedule;  // in enumeration coordinates
    RunTrace trace;
    PartialInj pairs;                 // pushed back into piece coordinates
};

/// Outcome of one extension stage over a mixed partition: the case taken,
/// the hitability evidence gating the agreement hits, per-piece builds and
/// the assembled piece-respecting injection.
struct StageStepReport {
    int case_id = 1;
    std::optional<std::uint64_t> case_piece;        // unbounded piece index
    std::optional<std::uint64_t> case_piece_other;  // target piece, case 3
    Certificate certificate;
    bool certificate_passed = false;
    std::vector<PieceBuild> pieces;
    PartialInj bounded_pairs;
    PartialInj h;
    std::vector<std::string> notes;
};

/// Builds one piece-respecting extension stage. Every unbounded piece gets
/// a fresh-generator build restricted to it; depending on how f interacts
/// with the pieces, agreement hits against f (or against the composite of
/// f with the partial build) are scheduled on the witnessing piece.
StageStepReport stage_step(const PartitionSpec& partition, const PeriodicMap& f,
                           const GroundAssignment& rho, const StageStepParams& params);

} // namespace cofin

#endif
