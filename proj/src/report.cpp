#include "pseudofib/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace pseudofib {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_residual(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

namespace {

std::string render_text(const ReportDoc& doc, bool with_tail) {
    std::string out;
    auto emit = [&out](const ReportDoc::KV& kv, const char* indent) {
        for (const auto& [k, v] : kv) {
            out += indent;
            out += k;
            out += ": ";
            out += v;
            out += "\n";
        }
    };
    emit(doc.head, "");
    for (const auto& sec : doc.sections) {
        out += "[" + sec.name + "]\n";
        emit(sec.kv, "  ");
    }
    if (with_tail) emit(doc.tail, "");
    return out;
}

std::string render_json(const ReportDoc& doc, bool with_tail) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : doc.head) j[k] = v;
    if (!doc.sections.empty()) {
        j["sections"] = nlohmann::ordered_json::array();
        for (const auto& sec : doc.sections) {
            nlohmann::ordered_json s;
            s["section"] = sec.name;
            for (const auto& [k, v] : sec.kv) s[k] = v;
            j["sections"].push_back(std::move(s));
        }
    }
    if (with_tail)
        for (const auto& [k, v] : doc.tail) j[k] = v;
    return j.dump(2) + "\n";
}

}  // namespace

std::string render(const ReportDoc& doc, ReportFormat format) {
    return format == ReportFormat::Text ? render_text(doc, true) : render_json(doc, true);
}

std::string render_body(const ReportDoc& doc, ReportFormat format) {
    return format == ReportFormat::Text ? render_text(doc, false) : render_json(doc, false);
}

}  // namespace pseudofib
