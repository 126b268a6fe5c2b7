#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pseudofib {

/// Ordered key/value document with named sections; the single source for both
/// output formats, so text and JSON carry identical content in a stable order.
struct ReportDoc {
    using KV = std::vector<std::pair<std::string, std::string>>;

    KV head;
    struct Section {
        std::string name;
        KV kv;
    };
    std::vector<Section> sections;
    KV tail;  // timing lives here, excluded from reproducibility comparisons

    void add(std::string key, std::string value) { head.emplace_back(std::move(key), std::move(value)); }
};

enum class ReportFormat { Text, Json };

std::string render(const ReportDoc& doc, ReportFormat format);

/// Rendering without the tail block, the reproducible part of a report.
std::string render_body(const ReportDoc& doc, ReportFormat format);

std::string format_double(double v);        // shortest round-trip-exact
std::string format_residual(double v);      // fixed scientific width

}  // namespace pseudofib
