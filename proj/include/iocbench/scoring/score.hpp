#pragma once

#include "iocbench/groundtruth/record.hpp"
#include "iocbench/harness/campaign.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/rational.hpp"
#include "iocbench/scoring/normalize.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iocbench::scoring {

enum class OutcomeKind { TpExact, YesWrongValue, Fn, Dk, Invalid };

inline constexpr std::size_t kOutcomeKinds = 5;

/// "TP_EXACT", "YES_WRONG_VALUE", "FN", "DK", "INVALID".
std::string_view to_string(OutcomeKind k);

struct Outcome {
    std::string variant_id;
    std::string model;
    std::string phase;
    OutcomeKind kind = OutcomeKind::Invalid;
    std::optional<std::string> reported_value;
    std::string ground_truth;

    bool operator==(const Outcome&) const = default;
};

/// Fills phase, kind, reported_value and ground_truth; the caller names the
/// variant and model.
Outcome score_answer(const NormalizedAnswer& answer, const groundtruth::VariantRecord& record);

/// Scores every log line against its dataset variant. The model column is
/// model_name. A line naming an unknown variant, or whose digest differs
/// from the variant's, throws Error(SchemaError). Repeated (variant, model,
/// version) lines count once.
std::vector<Outcome> score_log(const std::vector<harness::RawResponse>& log,
                               const std::vector<harness::DatasetVariant>& dataset);

struct OutcomeCounts {
    std::array<std::uint64_t, kOutcomeKinds> by_kind{};

    std::uint64_t operator[](OutcomeKind k) const { return by_kind[static_cast<std::size_t>(k)]; }
    void add(OutcomeKind k) { ++by_kind[static_cast<std::size_t>(k)]; }
    std::uint64_t queries() const;
    std::uint64_t yes() const { return (*this)[OutcomeKind::TpExact] + (*this)[OutcomeKind::YesWrongValue]; }
};

struct PhaseMetrics {
    /// Empty when grouped by phase only.
    std::string model;
    /// Empty when grouped by model only.
    std::string phase;
    OutcomeCounts counts;

    std::uint64_t queries() const { return counts.queries(); }
    /// YES / queries.
    Rational dr_raw() const;
    /// TP_EXACT / queries.
    Rational dr_correct() const;
    /// TP_EXACT / YES; absent without YES answers.
    std::optional<Rational> accuracy() const;
    /// (DK + INVALID) / queries.
    Rational uncertainty_rate() const;
    /// YES_WRONG_VALUE / queries.
    Rational hallucination_rate() const;
    /// FN / queries.
    Rational no_frac() const;
    Rational proportion(OutcomeKind k) const;
};

enum class GroupBy { Model, Phase, ModelPhase };

/// One entry per non-empty group, ordered by model then phase number.
std::vector<PhaseMetrics> aggregate(const std::vector<Outcome>& outcomes, GroupBy group_by);

struct HallucinationRecord {
    std::string value;
    ioc::ArtifactClass value_class = ioc::ArtifactClass::OtherString;
    std::uint64_t count = 0;
    std::vector<std::string> models;
    std::vector<std::string> phases;

    bool operator==(const HallucinationRecord&) const = default;
};

/// Coarse grouping used by the hallucination table: "IP addresses" (ipv4
/// and cidr), "Domain", "Base64", "String".
std::string_view row_group(ioc::ArtifactClass c);

/// YES_WRONG_VALUE outcomes grouped by trimmed reported value (a missing
/// value groups as ""), by count descending then value.
std::vector<HallucinationRecord> classify_hallucinations(const std::vector<Outcome>& outcomes);

/// Orders "P2" before "P10"; other names sort after, lexicographically.
bool phase_less(const std::string& a, const std::string& b);

}  // namespace iocbench::scoring
