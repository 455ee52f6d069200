#include "iocbench/scoring/report.hpp"

#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"

#include "json.hpp"

#include <sstream>

namespace iocbench::scoring {

namespace {

using nlohmann::json;

constexpr int kCsvPlaces = 4;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string rate(const Rational& r) { return to_decimal(r, kCsvPlaces); }

std::string percent(const Rational& r) { return to_decimal(r * 100, 1) + "%"; }

std::string grouped(std::uint64_t n) {
    auto s = std::to_string(n);
    for (auto i = static_cast<std::ptrdiff_t>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
    return s;
}

std::string md_cell(const std::string& s) {
    if (s.empty()) return "(empty)";
    std::string out;
    for (const char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string summary_csv(const Report& r) {
    std::ostringstream os;
    os << "model,queries,dr_raw,dr_correct,accuracy,fn,dk,invalid,hallucination_rate\n";
    for (const auto& m : r.by_model) {
        const auto acc = m.accuracy();
        os << csv_field(m.model) << ',' << m.queries() << ',' << rate(m.dr_raw()) << ',' << rate(m.dr_correct()) << ','
           << (acc ? rate(*acc) : "") << ',' << m.counts[OutcomeKind::Fn] << ',' << m.counts[OutcomeKind::Dk] << ','
           << m.counts[OutcomeKind::Invalid] << ',' << rate(m.hallucination_rate()) << '\n';
    }
    return os.str();
}

std::string phase_matrix_csv(const Report& r) {
    std::ostringstream os;
    os << "model,phase,yes_frac,no_frac,dk_frac\n";
    for (const auto& m : r.by_model_phase) {
        os << csv_field(m.model) << ',' << m.phase << ',' << rate(m.dr_raw()) << ',' << rate(m.no_frac()) << ','
           << rate(m.uncertainty_rate()) << '\n';
    }
    return os.str();
}

std::string hallucinations_csv(const Report& r) {
    std::ostringstream os;
    os << "value,class,count\n";
    for (const auto& h : r.hallucinations) {
        os << csv_field(h.value) << ',' << ioc::to_string(h.value_class) << ',' << h.count << '\n';
    }
    return os.str();
}

std::string markdown(const Report& r) {
    std::ostringstream os;
    os << "# iocbench report\n\n## Detection summary\n\n";
    if (r.by_model.empty()) {
        os << "No responses were scored.\n";
        return os.str();
    }
    os << "| Model | #Queries | DR | DR (exact) | Acc. | #FN | #DK | #Invalid | Halluc. |\n"
       << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& m : r.by_model) {
        const auto acc = m.accuracy();
        os << "| " << md_cell(m.model) << " | " << grouped(m.queries()) << " | " << percent(m.dr_raw()) << " | "
           << percent(m.dr_correct()) << " | " << (acc ? percent(*acc) : "n/a") << " | "
           << grouped(m.counts[OutcomeKind::Fn]) << " | " << grouped(m.counts[OutcomeKind::Dk]) << " | "
           << grouped(m.counts[OutcomeKind::Invalid]) << " | " << percent(m.hallucination_rate()) << " |\n";
    }
    os << "\n## Outcomes per phase\n\n| Model | Phase | YES | NO | DK | of which exact |\n"
       << "|---|---|---:|---:|---:|---:|\n";
    for (const auto& m : r.by_model_phase) {
        os << "| " << md_cell(m.model) << " | " << m.phase << " | " << percent(m.dr_raw()) << " | "
           << percent(m.no_frac()) << " | " << percent(m.uncertainty_rate()) << " | " << percent(m.dr_correct())
           << " |\n";
    }
    os << "\n## Hallucinations\n\n";
    if (r.hallucinations.empty()) {
        os << "None.\n";
        return os.str();
    }
    os << "| Group | Value | Class | Count |\n|---|---|---|---:|\n";
    for (const auto& h : r.hallucinations) {
        os << "| " << row_group(h.value_class) << " | " << md_cell(h.value) << " | " << ioc::to_string(h.value_class)
           << " | " << grouped(h.count) << " |\n";
    }
    return os.str();
}

json metrics_json(const PhaseMetrics& m) {
    json counts = json::object();
    for (std::size_t k = 0; k < kOutcomeKinds; ++k) {
        counts[std::string(to_string(static_cast<OutcomeKind>(k)))] = m.counts.by_kind[k];
    }
    const auto acc = m.accuracy();
    json j{{"model", m.model},
           {"queries", m.queries()},
           {"counts", counts},
           {"dr_raw", rational_to_json(m.dr_raw())},
           {"dr_correct", rational_to_json(m.dr_correct())},
           {"accuracy", acc ? rational_to_json(*acc) : json(nullptr)},
           {"uncertainty_rate", rational_to_json(m.uncertainty_rate())},
           {"hallucination_rate", rational_to_json(m.hallucination_rate())}};
    if (!m.phase.empty()) j["phase"] = m.phase;
    return j;
}

std::string report_json(const Report& r) {
    json summary = json::array();
    for (const auto& m : r.by_model) summary.push_back(metrics_json(m));
    json matrix = json::array();
    for (const auto& m : r.by_model_phase) matrix.push_back(metrics_json(m));
    json halluc = json::array();
    for (const auto& h : r.hallucinations) {
        halluc.push_back({{"value", h.value},
                          {"class", ioc::to_string(h.value_class)},
                          {"group", row_group(h.value_class)},
                          {"count", h.count},
                          {"models", h.models},
                          {"phases", h.phases}});
    }
    return json{{"summary", summary}, {"phase_matrix", matrix}, {"hallucinations", halluc}}.dump(2) + "\n";
}

}  // namespace

ReportFormat report_format_from_string(std::string_view s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    if (s == "json") return ReportFormat::Json;
    throw Error(ErrorCode::ConfigError, "unknown report format: " + std::string(s));
}

Report build_report(const std::vector<Outcome>& outcomes) {
    return {aggregate(outcomes, GroupBy::Model), aggregate(outcomes, GroupBy::ModelPhase),
            classify_hallucinations(outcomes)};
}

std::map<std::string, std::string> render_report(const Report& report, const std::set<ReportFormat>& formats) {
    std::map<std::string, std::string> files;
    if (formats.count(ReportFormat::Csv)) {
        files["summary.csv"] = summary_csv(report);
        files["phase_matrix.csv"] = phase_matrix_csv(report);
        files["hallucinations.csv"] = hallucinations_csv(report);
    }
    if (formats.count(ReportFormat::Markdown)) files["report.md"] = markdown(report);
    if (formats.count(ReportFormat::Json)) files["report.json"] = report_json(report);
    return files;
}

void write_report(const Report& report, const std::filesystem::path& dir, const std::set<ReportFormat>& formats) {
    for (const auto& [name, text] : render_report(report, formats)) write_file(dir / name, text);
}

}  // namespace iocbench::scoring
