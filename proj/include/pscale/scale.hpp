#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pscale/errors.hpp"

namespace pscale {

enum class Provenance { declared, suggested, observed };

// Frame of reference for percentization: the analyst-chosen conceptual
// minimum/maximum on the raw scale plus the target range the variable is
// mapped onto. Conceptual bounds may be wider than anything observed.
struct ScaleAnchor {
    double conceptual_min = 0.0;
    double conceptual_max = 1.0;
    double target_min = 0.0;
    double target_max = 1.0;
    Provenance provenance = Provenance::declared;

    double conceptual_width() const { return conceptual_max - conceptual_min; }
    double target_width() const { return target_max - target_min; }
    bool unit_target() const { return target_min == 0.0 && target_max == 1.0; }

    // Common target presets: 0-1, 0-100, -1-1.
    static ScaleAnchor unit(double c_min, double c_max,
                            Provenance p = Provenance::declared) {
        return {c_min, c_max, 0.0, 1.0, p};
    }
    static ScaleAnchor percent(double c_min, double c_max,
                               Provenance p = Provenance::declared) {
        return {c_min, c_max, 0.0, 100.0, p};
    }
    static ScaleAnchor bipolar(double c_min, double c_max,
                               Provenance p = Provenance::declared) {
        return {c_min, c_max, -1.0, 1.0, p};
    }
};

// Throws DegenerateAnchor / NonFiniteInput unless both ranges are finite
// with strictly positive width.
void require_valid(const ScaleAnchor& anchor);

enum class Role { dependent, independent, mediator, control };
enum class Kind { numerical, binary, nominal };

// A column's role in the analysis plus how to put it on a percentage scale.
// Numerical variables need an anchor; binary ones are implied 0-or-1; nominal
// ones list their categories and the reference level omitted from dummies.
struct VariableSpec {
    std::string name;
    Role role = Role::independent;
    Kind kind = Kind::numerical;
    std::optional<ScaleAnchor> anchor;
    std::vector<std::string> categories;
    std::string reference_category;
    std::string part;  // nonempty: applies only to the input with this label

    // Names this spec contributes to a percentized dataset ("<var>=<category>"
    // dummies for nominal, the variable name otherwise).
    std::vector<std::string> percentized_names() const;
};

// Throws InvalidSpec when a spec violates its own kind's requirements
// (e.g. nominal without >= 2 categories or with a foreign reference).
void require_valid(const VariableSpec& spec);

struct AnchorValidation {
    std::vector<std::size_t> rows_below;  // value < conceptual_min
    std::vector<std::size_t> rows_above;  // value > conceptual_max
    std::vector<std::string> warnings;    // one line per offending row

    bool ok() const { return rows_below.empty() && rows_above.empty(); }
};

// Checks observed values against the anchor. Out-of-range values are
// warnings, never errors: analysis proceeds with percentized values outside
// the target range. Missing values (NaN) are skipped.
AnchorValidation validate_anchor(const ScaleAnchor& anchor,
                                 std::span<const double> values);

struct AnchorCandidate {
    double conceptual_min = 0.0;
    double conceptual_max = 0.0;
    double score = 0.0;  // higher preferred; top candidate gets 1.0
    std::string rationale;
};

// Proposes round-number anchor pairs bracketing the observed range, for the
// analyst to confirm. With declared bounds (a closed-ended scale) the sole
// candidate is exactly those bounds. The choice stays with the human: anchors
// are conceptual, not data-driven.
std::vector<AnchorCandidate> suggest_anchors(
    double observed_min, double observed_max,
    std::optional<std::pair<double, double>> declared_bounds = std::nullopt);

}  // namespace pscale
