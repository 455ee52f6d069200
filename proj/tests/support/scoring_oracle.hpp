#pragma once

#include "iocbench/rng.hpp"
#include "iocbench/scoring/score.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace iocbench::testing {

inline std::vector<scoring::Outcome> random_outcomes(Rng& rng, std::size_t n) {
    static const char* models[] = {"alpha", "beta", "gamma", "delta"};
    static const char* values[] = {"192.168.17.101", "10.0.0.1", "en.wikipedia.org", "N/A", "", "172.31.0.0/16"};
    const auto model_count = 1 + rng.below(4);
    std::vector<scoring::Outcome> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& o = out[i];
        o.variant_id = "f" + std::to_string(i);
        o.model = models[rng.below(model_count)];
        o.phase = "P" + std::to_string(rng.below(13));
        o.kind = static_cast<scoring::OutcomeKind>(rng.below(scoring::kOutcomeKinds));
        o.ground_truth = "203.0.113.7";
        if (o.kind == scoring::OutcomeKind::TpExact) o.reported_value = o.ground_truth;
        if (o.kind == scoring::OutcomeKind::YesWrongValue && rng.below(5) != 0) o.reported_value = values[rng.below(6)];
    }
    return out;
}

// Straight recount by filtering the whole list per group, compared with
// cross-multiplication so no rational arithmetic is shared with the code
// under test.
struct BruteCounts {
    std::uint64_t q = 0, tp = 0, wrong = 0, fn = 0, dk = 0, invalid = 0;
};

inline BruteCounts brute_count(const std::vector<scoring::Outcome>& all, const std::string* model,
                               const std::string* phase) {
    BruteCounts c;
    for (const auto& o : all) {
        if (model && o.model != *model) continue;
        if (phase && o.phase != *phase) continue;
        ++c.q;
        switch (o.kind) {
            case scoring::OutcomeKind::TpExact: ++c.tp; break;
            case scoring::OutcomeKind::YesWrongValue: ++c.wrong; break;
            case scoring::OutcomeKind::Fn: ++c.fn; break;
            case scoring::OutcomeKind::Dk: ++c.dk; break;
            case scoring::OutcomeKind::Invalid: ++c.invalid; break;
        }
    }
    return c;
}

inline bool same_ratio(const Rational& r, std::uint64_t num, std::uint64_t den) {
    return r.numerator() * BigInt(den) == BigInt(num) * r.denominator();
}

inline bool matches(const scoring::PhaseMetrics& m, const BruteCounts& c) {
    using K = scoring::OutcomeKind;
    if (m.queries() != c.q || m.counts[K::TpExact] != c.tp || m.counts[K::YesWrongValue] != c.wrong ||
        m.counts[K::Fn] != c.fn || m.counts[K::Dk] != c.dk || m.counts[K::Invalid] != c.invalid) {
        return false;
    }
    const auto yes = c.tp + c.wrong;
    const auto acc = m.accuracy();
    if (yes == 0 ? acc.has_value() : !(acc && same_ratio(*acc, c.tp, yes))) return false;
    return same_ratio(m.dr_raw(), yes, c.q) && same_ratio(m.dr_correct(), c.tp, c.q) &&
           same_ratio(m.uncertainty_rate(), c.dk + c.invalid, c.q) && same_ratio(m.hallucination_rate(), c.wrong, c.q) &&
           same_ratio(m.no_frac(), c.fn, c.q);
}

// Every group present in `all`, checked against the recount; also checks
// that no empty group is reported and no present group is missing.
inline bool aggregate_matches_oracle(const std::vector<scoring::Outcome>& all) {
    std::vector<std::string> models, phases;
    for (const auto& o : all) {
        if (std::find(models.begin(), models.end(), o.model) == models.end()) models.push_back(o.model);
        if (std::find(phases.begin(), phases.end(), o.phase) == phases.end()) phases.push_back(o.phase);
    }
    const auto by_model = scoring::aggregate(all, scoring::GroupBy::Model);
    const auto by_phase = scoring::aggregate(all, scoring::GroupBy::Phase);
    const auto by_both = scoring::aggregate(all, scoring::GroupBy::ModelPhase);
    if (by_model.size() != models.size() || by_phase.size() != phases.size()) return false;
    for (const auto& m : by_model) {
        if (!m.phase.empty() || !matches(m, brute_count(all, &m.model, nullptr))) return false;
    }
    for (const auto& m : by_phase) {
        if (!m.model.empty() || !matches(m, brute_count(all, nullptr, &m.phase))) return false;
    }
    std::size_t nonempty = 0;
    for (const auto& mo : models) {
        for (const auto& ph : phases) nonempty += brute_count(all, &mo, &ph).q > 0;
    }
    if (by_both.size() != nonempty) return false;
    for (const auto& m : by_both) {
        if (!matches(m, brute_count(all, &m.model, &m.phase))) return false;
    }
    return true;
}

}  // namespace iocbench::testing
