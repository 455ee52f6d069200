#include "iocbench/scoring/score.hpp"

#include "iocbench/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace iocbench::scoring {

namespace {

std::string trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n\f\v");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<long> phase_number(const std::string& p) {
    if (p.size() < 2 || p[0] != 'P') return std::nullopt;
    long n = 0;
    const auto [ptr, ec] = std::from_chars(p.data() + 1, p.data() + p.size(), n);
    if (ec != std::errc() || ptr != p.data() + p.size()) return std::nullopt;
    return n;
}

Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

}  // namespace

std::string_view to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::TpExact: return "TP_EXACT";
        case OutcomeKind::YesWrongValue: return "YES_WRONG_VALUE";
        case OutcomeKind::Fn: return "FN";
        case OutcomeKind::Dk: return "DK";
        case OutcomeKind::Invalid: return "INVALID";
    }
    return "INVALID";
}

Outcome score_answer(const NormalizedAnswer& answer, const groundtruth::VariantRecord& record) {
    Outcome o;
    o.phase = record.phase;
    o.ground_truth = record.ioc_canonical;
    switch (answer.decision) {
        case Decision::Yes:
            o.reported_value = answer.value;
            o.kind = answer.value && trimmed(*answer.value) == record.ioc_canonical ? OutcomeKind::TpExact
                                                                                    : OutcomeKind::YesWrongValue;
            break;
        case Decision::No: o.kind = OutcomeKind::Fn; break;
        case Decision::DontKnow: o.kind = OutcomeKind::Dk; break;
        case Decision::Invalid: o.kind = OutcomeKind::Invalid; break;
    }
    return o;
}

std::vector<Outcome> score_log(const std::vector<harness::RawResponse>& log,
                               const std::vector<harness::DatasetVariant>& dataset) {
    std::unordered_map<std::string, const harness::DatasetVariant*> by_id;
    for (const auto& v : dataset) by_id.emplace(v.variant_id, &v);
    std::set<harness::ResumeKey> seen;
    std::vector<Outcome> out;
    out.reserve(log.size());
    for (const auto& r : log) {
        const auto it = by_id.find(r.variant_id);
        if (it == by_id.end()) throw Error(ErrorCode::SchemaError, "log names unknown variant " + r.variant_id);
        const auto& v = *it->second;
        if (r.variant_digest != v.record.content_digest) {
            throw Error(ErrorCode::SchemaError, "log digest for " + r.variant_id + " does not match the dataset");
        }
        if (!seen.insert(harness::resume_key(r)).second) continue;
        auto o = score_answer(normalize_response(r.body_text), v.record);
        o.variant_id = r.variant_id;
        o.model = r.model_name;
        out.push_back(std::move(o));
    }
    return out;
}

std::uint64_t OutcomeCounts::queries() const { return std::accumulate(by_kind.begin(), by_kind.end(), std::uint64_t{0}); }

Rational PhaseMetrics::proportion(OutcomeKind k) const { return ratio(counts[k], queries()); }
Rational PhaseMetrics::dr_raw() const { return ratio(counts.yes(), queries()); }
Rational PhaseMetrics::dr_correct() const { return proportion(OutcomeKind::TpExact); }
Rational PhaseMetrics::no_frac() const { return proportion(OutcomeKind::Fn); }
Rational PhaseMetrics::hallucination_rate() const { return proportion(OutcomeKind::YesWrongValue); }

std::optional<Rational> PhaseMetrics::accuracy() const {
    if (counts.yes() == 0) return std::nullopt;
    return ratio(counts[OutcomeKind::TpExact], counts.yes());
}

Rational PhaseMetrics::uncertainty_rate() const {
    return ratio(counts[OutcomeKind::Dk] + counts[OutcomeKind::Invalid], queries());
}

bool phase_less(const std::string& a, const std::string& b) {
    const auto na = phase_number(a);
    const auto nb = phase_number(b);
    if (na && nb) return *na != *nb ? *na < *nb : a < b;
    if (na || nb) return na.has_value();
    return a < b;
}

std::vector<PhaseMetrics> aggregate(const std::vector<Outcome>& outcomes, GroupBy group_by) {
    auto key_less = [](const std::pair<std::string, std::string>& x, const std::pair<std::string, std::string>& y) {
        if (x.first != y.first) return x.first < y.first;
        return phase_less(x.second, y.second);
    };
    std::map<std::pair<std::string, std::string>, OutcomeCounts, decltype(key_less)> groups(key_less);
    for (const auto& o : outcomes) {
        std::pair<std::string, std::string> key;
        if (group_by != GroupBy::Phase) key.first = o.model;
        if (group_by != GroupBy::Model) key.second = o.phase;
        groups[key].add(o.kind);
    }
    std::vector<PhaseMetrics> out;
    out.reserve(groups.size());
    for (const auto& [key, counts] : groups) out.push_back({key.first, key.second, counts});
    return out;
}

std::string_view row_group(ioc::ArtifactClass c) {
    switch (c) {
        case ioc::ArtifactClass::Ipv4:
        case ioc::ArtifactClass::Cidr: return "IP addresses";
        case ioc::ArtifactClass::Domain: return "Domain";
        case ioc::ArtifactClass::Base64Blob: return "Base64";
        case ioc::ArtifactClass::OtherString: return "String";
    }
    return "String";
}

std::vector<HallucinationRecord> classify_hallucinations(const std::vector<Outcome>& outcomes) {
    struct Acc {
        std::uint64_t count = 0;
        std::set<std::string> models;
        std::set<std::string, decltype(&phase_less)> phases{&phase_less};
    };
    std::map<std::string, Acc> by_value;
    for (const auto& o : outcomes) {
        if (o.kind != OutcomeKind::YesWrongValue) continue;
        auto& a = by_value[o.reported_value ? trimmed(*o.reported_value) : std::string()];
        ++a.count;
        a.models.insert(o.model);
        a.phases.insert(o.phase);
    }
    std::vector<HallucinationRecord> out;
    out.reserve(by_value.size());
    for (const auto& [value, a] : by_value) {
        out.push_back({value, ioc::classify_artifact(value), a.count, {a.models.begin(), a.models.end()},
                       {a.phases.begin(), a.phases.end()}});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.count > y.count; });
    return out;
}

}  // namespace iocbench::scoring
