#include "quadcong/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace quadcong {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string vmin_human(const VerificationRecord& rec) {
    std::ostringstream os;
    os << rec.theorem12_vmin;
    return os.str();
}

std::string elapsed_text(double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    return os.str();
}

} // namespace

std::string_view format_name(Format f) noexcept {
    switch (f) {
    case Format::Human: return "human";
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    }
    return "human";
}

Format parse_format(std::string_view name) {
    if (name == "human") return Format::Human;
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw Error(Errc::Precondition, "unknown format '" + std::string(name) + "'");
}

std::string record_to_json(const VerificationRecord& rec) {
    ordered_json j;
    j["p"] = rec.p;
    j["d"] = rec.d;
    j["chi"] = rec.chi;
    j["theorem11_ok"] = rec.theorem11_ok;
    j["theorem12_vmin"] = rec.theorem12_vmin.exponent;
    j["degree_P"] = rec.degree_P;
    j["method"] = method_name(rec.method);
    j["k_used"] = rec.k_used;
    j["elapsed_ms"] = rec.elapsed_ms;
    return j.dump();
}

VerificationRecord record_from_json(std::string_view line) {
    try {
        const auto j = ordered_json::parse(line);
        VerificationRecord rec;
        rec.p = j.at("p").get<i64>();
        rec.d = j.at("d").get<i64>();
        rec.chi = j.at("chi").get<int>();
        rec.theorem11_ok = j.at("theorem11_ok").get<bool>();
        rec.degree_P = j.at("degree_P").get<std::size_t>();
        rec.method = parse_method(j.at("method").get<std::string>());
        rec.k_used = j.at("k_used").get<unsigned>();
        const auto v = j.at("theorem12_vmin").get<unsigned>();
        rec.theorem12_vmin = {v, v >= rec.k_used};
        rec.elapsed_ms = j.at("elapsed_ms").get<double>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Precondition, std::string("malformed record: ") + e.what());
    }
}

std::string csv_header() { return "p,d,chi,theorem11_ok,theorem12_vmin,degree_P,method,k_used,elapsed_ms"; }

std::string record_to_csv(const VerificationRecord& rec) {
    std::ostringstream os;
    os << rec.p << ',' << rec.d << ',' << rec.chi << ',' << (rec.theorem11_ok ? "true" : "false") << ','
       << rec.theorem12_vmin.exponent << ',' << rec.degree_P << ',' << method_name(rec.method) << ',' << rec.k_used
       << ',' << elapsed_text(rec.elapsed_ms);
    return os.str();
}

std::string human_header() {
    std::ostringstream os;
    os << std::left << std::setw(6) << "p" << std::setw(6) << "d" << std::setw(5) << "chi" << std::setw(8) << "P(x)"
       << std::setw(8) << "vmin" << std::setw(10) << "deg P" << std::setw(10) << "method" << std::setw(4) << "k"
       << std::setw(12) << "ms" << "status";
    return os.str();
}

std::string record_to_human(const VerificationRecord& rec) {
    std::ostringstream os;
    os << std::left << std::setw(6) << rec.p << std::setw(6) << rec.d << std::setw(5) << rec.chi << std::setw(8)
       << (rec.theorem11_ok ? "ok" : "bad") << std::setw(8) << vmin_human(rec) << std::setw(10) << rec.degree_P
       << std::setw(10) << method_name(rec.method) << std::setw(4) << rec.k_used << std::setw(12)
       << elapsed_text(rec.elapsed_ms) << (rec.ok() ? "OK" : "FAIL");
    return os.str();
}

std::string emit_record(const VerificationRecord& rec, Format fmt, bool with_header) {
    switch (fmt) {
    case Format::Json: return record_to_json(rec) + "\n";
    case Format::Csv: return (with_header ? csv_header() + "\n" : "") + record_to_csv(rec) + "\n";
    case Format::Human: return (with_header ? human_header() + "\n" : "") + record_to_human(rec) + "\n";
    }
    return {};
}

void emit_records(std::ostream& os, std::span<const VerificationRecord> records, Format fmt) {
    bool first = true;
    for (const auto& rec : records) {
        os << emit_record(rec, fmt, first);
        first = false;
    }
}

} // namespace quadcong
