// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/report.hpp"

#include "aimp/error.hpp"
#include "internal/time_util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace aimp::report {

namespace {

std::string escape_html(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&#39;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string number_to_string(double v) {
    return nlohmann::json(v).dump();
}

/// Short digest display that still carries the verbatim value in the title
/// attribute.
std::string digest_span(const std::string& hex) {
    if (hex.size() <= 12) {
        return "<code>" + escape_html(hex) + "</code>";
    }
    return "<code class=\"digest\" title=\"" + escape_html(hex) + "\">" +
           escape_html(hex.substr(0, 12)) + "&#8230;</code>";
}

std::string duration_text(const std::string& started, const std::string& ended) {
    auto a = internal::iso_utc_to_epoch(started);
    auto b = internal::iso_utc_to_epoch(ended);
    if (a < 0 || b < 0 || b < a) return "n/a";
    return std::to_string(b - a) + "s";
}

struct SvgLayout {
    std::map<std::string, int> rank;
    std::map<std::string, int> row;
    int ranks = 0;
    int max_rows = 0;
};

SvgLayout layout(const pipeline::Dag& dag) {
    SvgLayout l;
    for (const auto& name : dag.order) {
        int r = 0;
        auto it = dag.reverse.find(name);
        if (it != dag.reverse.end()) {
            for (const auto& up : it->second) {
                r = std::max(r, l.rank.at(up) + 1);
            }
        }
        l.rank[name] = r;
        l.ranks = std::max(l.ranks, r + 1);
    }
    std::map<int, std::vector<std::string>> per_rank;
    for (const auto& [name, r] : l.rank) {
        per_rank[r].push_back(name);
    }
    for (auto& [r, names] : per_rank) {
        std::sort(names.begin(), names.end());
        for (std::size_t i = 0; i < names.size(); ++i) {
            l.row[names[i]] = static_cast<int>(i);
        }
        l.max_rows = std::max(l.max_rows, static_cast<int>(names.size()));
    }
    return l;
}

} // namespace

pipeline::Dag dag_from_passport(const passport::ModelPassport& p) {
    pipeline::PipelineSpec spec;
    for (const auto& stage : p.lock) {
        pipeline::StageSpec s;
        s.name = stage.name;
        s.command = stage.command;
        for (const auto& dep : stage.deps) s.deps.push_back(dep.path);
        for (const auto& out : stage.outs) s.outs.push_back(out.path);
        spec.stages.push_back(std::move(s));
    }
    return pipeline::build_dag(spec);
}

std::string render_dag_svg(const pipeline::Dag& dag) {
    constexpr int kNodeW = 150, kNodeH = 40, kHGap = 70, kVGap = 24, kMargin = 20;

    auto l = layout(dag);
    int width = dag.order.empty()
                    ? 2 * kMargin
                    : 2 * kMargin + l.ranks * (kNodeW + kHGap) - kHGap;
    int height = dag.order.empty()
                     ? 2 * kMargin
                     : 2 * kMargin + l.max_rows * (kNodeH + kVGap) - kVGap;

    auto x_of = [&](const std::string& n) { return kMargin + l.rank.at(n) * (kNodeW + kHGap); };
    auto y_of = [&](const std::string& n) { return kMargin + l.row.at(n) * (kNodeH + kVGap); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\" role=\"img\">\n";
    svg << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#555\"/></marker></defs>\n";

    for (const auto& name : dag.order) {
        auto it = dag.edges.find(name);
        if (it == dag.edges.end()) continue;
        for (const auto& to : it->second) {
            svg << "<line x1=\"" << x_of(name) + kNodeW << "\" y1=\"" << y_of(name) + kNodeH / 2
                << "\" x2=\"" << x_of(to) << "\" y2=\"" << y_of(to) + kNodeH / 2
                << "\" stroke=\"#555\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
        }
    }
    for (const auto& name : dag.order) {
        int x = x_of(name), y = y_of(name);
        svg << "<g><rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kNodeW << "\" height=\""
            << kNodeH << "\" rx=\"6\" fill=\"#eef4fb\" stroke=\"#4a6fa5\"/>"
            << "<text x=\"" << x + kNodeW / 2 << "\" y=\"" << y + kNodeH / 2 + 4
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << escape_html(name) << "</text></g>\n";
    }
    svg << "</svg>";
    return std::move(svg).str();
}

namespace {

const char* kCss = R"(
body { font-family: -apple-system, "Segoe UI", Roboto, sans-serif; margin: 2rem auto; max-width: 70rem; padding: 0 1rem; color: #1c2733; }
h1 { border-bottom: 3px solid #4a6fa5; padding-bottom: .3rem; }
h2 { margin-top: 2rem; color: #2c4a6e; }
table { border-collapse: collapse; margin: .5rem 0 1rem; }
th, td { border: 1px solid #c8d4e0; padding: .3rem .6rem; text-align: left; font-size: .92rem; }
th { background: #eef4fb; }
code { background: #f4f6f8; padding: .1rem .25rem; border-radius: 3px; font-size: .88rem; }
.identity { font-size: 1.05rem; }
.stage { margin-bottom: 1.5rem; padding: .8rem 1rem; border: 1px solid #c8d4e0; border-radius: 6px; }
.muted { color: #68778a; }
)";

class HtmlRenderer {
public:
    HtmlRenderer(const passport::ModelPassport& p, const RenderOptions& options)
        : p_(p), options_(options) {}

    std::string run() {
        auto title = p_.manual.model_name.empty() ? std::string("AI Model Passport")
                                                  : "AI Model Passport: " + p_.manual.model_name;
        out_ << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>"
             << escape_html(title) << "</title>\n<style>" << kCss << "</style>\n</head>\n<body>\n";
        out_ << "<h1>" << escape_html(title) << "</h1>\n";
        identity_section();
        datasets_section();
        model_section();
        pipeline_section();
        stages_section();
        manual_section();
        out_ << "</body>\n</html>\n";
        return std::move(out_).str();
    }

private:
    const passport::ModelPassport& p_;
    const RenderOptions& options_;
    std::ostringstream out_;

    void row(const std::string& key, const std::string& value_html) {
        out_ << "<tr><th>" << escape_html(key) << "</th><td>" << value_html << "</td></tr>\n";
    }

    void identity_section() {
        out_ << "<h2>Identity</h2>\n<p class=\"identity\"><code>" << escape_html(p_.identity)
             << "</code></p>\n<table>\n";
        row("Created", escape_html(p_.created_at));
        row("Tool version", escape_html(p_.tool_version));
        row("Format version", escape_html(p_.format_version));
        out_ << "</table>\n";
    }

    void datasets_section() {
        out_ << "<h2>Datasets</h2>\n";
        if (p_.datasets.empty()) {
            out_ << "<p class=\"muted\">none recorded</p>\n";
            return;
        }
        for (const auto& d : p_.datasets) {
            const auto& desc = d.descriptor;
            out_ << "<h3>" << escape_html(desc.title) << "</h3>\n<table>\n";
            row("Identifier", "<code>" + escape_html(desc.id) + "</code>");
            if (!desc.version.empty()) row("Version", escape_html(desc.version));
            row("Publisher", escape_html(desc.publisher.name) +
                                 (desc.publisher.kind.empty()
                                      ? ""
                                      : " <span class=\"muted\">(" +
                                            escape_html(desc.publisher.kind) + ")</span>"));
            row("License", escape_html(desc.license));
            if (!desc.description.empty()) row("Description", escape_html(desc.description));
            if (!desc.keywords.empty()) {
                std::string kw;
                for (std::size_t i = 0; i < desc.keywords.size(); ++i) {
                    if (i) kw += ", ";
                    kw += escape_html(desc.keywords[i]);
                }
                row("Keywords", kw);
            }
            for (const auto& [key, values] : desc.health_ext) {
                std::string joined;
                for (std::size_t i = 0; i < values.size(); ++i) {
                    if (i) joined += ", ";
                    joined += escape_html(values[i].lexical);
                }
                row(key, joined);
            }
            if (!d.source_url.empty()) {
                row("Harvested from",
                    "<code>" + escape_html(d.source_url) + "</code> at " +
                        escape_html(d.retrieved_at));
            }
            out_ << "</table>\n";
            if (!desc.distributions.empty()) {
                out_ << "<table>\n<tr><th>Distribution</th><th>Media type</th>"
                        "<th>Size</th><th>Checksum</th></tr>\n";
                for (const auto& dist : desc.distributions) {
                    out_ << "<tr><td><code>" << escape_html(dist.access_url) << "</code></td><td>"
                         << escape_html(dist.media_type) << "</td><td>"
                         << (dist.byte_size ? std::to_string(*dist.byte_size) : "n/a")
                         << "</td><td>"
                         << (dist.checksum ? digest_span(dist.checksum->digest) : "n/a")
                         << "</td></tr>\n";
                }
                out_ << "</table>\n";
            }
        }
    }

    void model_section() {
        out_ << "<h2>Model</h2>\n<table>\n";
        if (!p_.manual.learning_task.empty()) row("Learning task", escape_html(p_.manual.learning_task));
        if (!p_.manual.learning_approach.empty()) {
            row("Learning approach", escape_html(p_.manual.learning_approach));
        }
        if (!p_.manual.algorithm_family.empty()) {
            row("Algorithm", escape_html(p_.manual.algorithm_family));
        }
        if (!p_.manual.software_framework.empty()) {
            row("Framework", escape_html(p_.manual.software_framework));
        }
        row("Artifact sha256", digest_span(p_.training.model_artifact.sha256.digest));
        row("Artifact md5", digest_span(p_.training.model_artifact.md5.digest));
        row("Artifact size", std::to_string(p_.training.model_artifact.size) + " bytes");
        out_ << "</table>\n";

        if (!p_.training.hyperparameters.empty()) {
            out_ << "<h3>Hyperparameters</h3>\n<table>\n<tr><th>Name</th><th>Value</th></tr>\n";
            for (const auto& [key, value] : p_.training.hyperparameters) {
                out_ << "<tr><td><code>" << escape_html(key) << "</code></td><td>"
                     << escape_html(value.lexical) << "</td></tr>\n";
            }
            out_ << "</table>\n";
        }
        if (!p_.training.evaluations.empty()) {
            out_ << "<h3>Evaluation</h3>\n<table>\n<tr><th>Metric</th><th>Value</th></tr>\n";
            for (const auto& e : p_.training.evaluations) {
                out_ << "<tr><td>" << escape_html(e.metric) << "</td><td>"
                     << escape_html(number_to_string(e.value)) << "</td></tr>\n";
            }
            out_ << "</table>\n";
        }
        if (!p_.training.environment.empty()) {
            out_ << "<h3>Environment</h3>\n<table>\n<tr><th>Package</th><th>Version</th></tr>\n";
            for (const auto& pkg : p_.training.environment) {
                out_ << "<tr><td>" << escape_html(pkg.name) << "</td><td>"
                     << escape_html(pkg.version) << "</td></tr>\n";
            }
            out_ << "</table>\n";
        }
    }

    void pipeline_section() {
        out_ << "<h2>Pipeline</h2>\n";
        auto dag = dag_from_passport(p_);
        if (options_.include_graph_svg) {
            out_ << render_dag_svg(dag) << "\n";
        }
        out_ << "<p class=\"muted\">Execution order: ";
        for (std::size_t i = 0; i < dag.order.size(); ++i) {
            if (i) out_ << " &#8594; ";
            out_ << escape_html(dag.order[i]);
        }
        out_ << "</p>\n";
    }

    void path_ref_table(const std::vector<pipeline::PathRef>& refs, const char* caption) {
        if (refs.empty()) return;
        out_ << "<table>\n<tr><th>" << caption
             << "</th><th>md5</th><th>sha256</th><th>Size</th></tr>\n";
        for (const auto& entry : refs) {
            out_ << "<tr><td><code>" << escape_html(entry.path) << "</code></td><td>"
                 << digest_span(entry.ref.md5.digest) << "</td><td>"
                 << digest_span(entry.ref.sha256.digest) << "</td><td>" << entry.ref.size
                 << "</td></tr>\n";
        }
        out_ << "</table>\n";
    }

    void stages_section() {
        out_ << "<h2>Stage details</h2>\n";
        auto dag = dag_from_passport(p_);
        std::map<std::string, const passport::LockStageSummary*> by_name;
        for (const auto& stage : p_.lock) by_name[stage.name] = &stage;
        for (const auto& name : dag.order) {
            const auto* stage = by_name.at(name);
            out_ << "<div class=\"stage\">\n<h3>" << escape_html(name) << "</h3>\n<table>\n";
            row("Command", "<code>" + escape_html(stage->command) + "</code>");
            row("Fingerprint", digest_span(stage->fingerprint));
            row("Exit code", std::to_string(stage->exit_code));
            row("Duration", duration_text(stage->started_at, stage->ended_at));
            if (stage->tool) {
                row("Tool", escape_html(stage->tool->name) + " " + escape_html(stage->tool->version));
            }
            if (!stage->params.empty()) {
                std::string params;
                bool first = true;
                for (const auto& [key, value] : stage->params) {
                    if (!first) params += ", ";
                    first = false;
                    params += "<code>" + escape_html(key) + "=" + escape_html(value.lexical) +
                              "</code>";
                }
                row("Params", params);
            }
            out_ << "</table>\n";
            path_ref_table(stage->deps, "Dependency");
            path_ref_table(stage->outs, "Output");
            out_ << "</div>\n";
        }
    }

    void manual_section() {
        out_ << "<h2>Manual metadata</h2>\n<table>\n";
        row("Intended purpose", escape_html(p_.manual.intended_purpose));
        row("Potential threats", escape_html(p_.manual.potential_threats));
        row("License", escape_html(p_.manual.license));
        row("Owner", escape_html(p_.manual.owner));
        if (!p_.manual.description.empty()) row("Description", escape_html(p_.manual.description));
        if (!p_.manual.model_version.empty()) {
            row("Model version", escape_html(p_.manual.model_version));
        }
        out_ << "</table>\n";
    }
};

class MarkdownRenderer {
public:
    explicit MarkdownRenderer(const passport::ModelPassport& p) : p_(p) {}

    std::string run() {
        auto title = p_.manual.model_name.empty() ? std::string("AI Model Passport")
                                                  : "AI Model Passport: " + p_.manual.model_name;
        out_ << "# " << title << "\n\n";
        out_ << "## Identity\n\n`" << p_.identity << "`\n\n"
             << "- Created: " << p_.created_at << "\n"
             << "- Tool version: " << p_.tool_version << "\n"
             << "- Format version: " << p_.format_version << "\n\n";

        out_ << "## Datasets\n\n";
        if (p_.datasets.empty()) {
            out_ << "none recorded\n\n";
        } else {
            for (const auto& d : p_.datasets) {
                const auto& desc = d.descriptor;
                out_ << "### " << desc.title << "\n\n"
                     << "- Identifier: `" << desc.id << "`\n"
                     << "- Publisher: " << desc.publisher.name << "\n"
                     << "- License: " << desc.license << "\n";
                if (!desc.version.empty()) out_ << "- Version: " << desc.version << "\n";
                for (const auto& [key, values] : desc.health_ext) {
                    out_ << "- " << key << ": ";
                    for (std::size_t i = 0; i < values.size(); ++i) {
                        if (i) out_ << ", ";
                        out_ << values[i].lexical;
                    }
                    out_ << "\n";
                }
                out_ << "\n";
            }
        }

        out_ << "## Model\n\n";
        if (!p_.manual.learning_task.empty()) out_ << "- Learning task: " << p_.manual.learning_task << "\n";
        if (!p_.manual.learning_approach.empty()) {
            out_ << "- Learning approach: " << p_.manual.learning_approach << "\n";
        }
        if (!p_.manual.algorithm_family.empty()) {
            out_ << "- Algorithm: " << p_.manual.algorithm_family << "\n";
        }
        if (!p_.manual.software_framework.empty()) {
            out_ << "- Framework: " << p_.manual.software_framework << "\n";
        }
        out_ << "- Artifact sha256: `" << p_.training.model_artifact.sha256.digest << "`\n"
             << "- Artifact md5: `" << p_.training.model_artifact.md5.digest << "`\n\n";
        if (!p_.training.hyperparameters.empty()) {
            out_ << "| Hyperparameter | Value |\n|---|---|\n";
            for (const auto& [key, value] : p_.training.hyperparameters) {
                out_ << "| `" << key << "` | " << value.lexical << " |\n";
            }
            out_ << "\n";
        }
        if (!p_.training.evaluations.empty()) {
            out_ << "| Metric | Value |\n|---|---|\n";
            for (const auto& e : p_.training.evaluations) {
                out_ << "| " << e.metric << " | " << number_to_string(e.value) << " |\n";
            }
            out_ << "\n";
        }

        auto dag = dag_from_passport(p_);
        out_ << "## Pipeline\n\n";
        for (std::size_t i = 0; i < dag.order.size(); ++i) {
            if (i) out_ << " -> ";
            out_ << dag.order[i];
        }
        out_ << "\n\n## Stage details\n\n";
        std::map<std::string, const passport::LockStageSummary*> by_name;
        for (const auto& stage : p_.lock) by_name[stage.name] = &stage;
        for (const auto& name : dag.order) {
            const auto* stage = by_name.at(name);
            out_ << "### " << name << "\n\n"
                 << "- Command: `" << stage->command << "`\n"
                 << "- Fingerprint: `" << stage->fingerprint << "`\n"
                 << "- Duration: " << duration_text(stage->started_at, stage->ended_at) << "\n";
            if (stage->tool) {
                out_ << "- Tool: " << stage->tool->name << " " << stage->tool->version << "\n";
            }
            if (!stage->params.empty()) {
                out_ << "- Params:";
                for (const auto& [key, value] : stage->params) {
                    out_ << " `" << key << "=" << value.lexical << "`";
                }
                out_ << "\n";
            }
            if (!stage->deps.empty() || !stage->outs.empty()) {
                out_ << "\n| Path | Role | sha256 | Size |\n|---|---|---|---|\n";
                for (const auto& entry : stage->deps) {
                    out_ << "| `" << entry.path << "` | dep | `" << entry.ref.sha256.digest
                         << "` | " << entry.ref.size << " |\n";
                }
                for (const auto& entry : stage->outs) {
                    out_ << "| `" << entry.path << "` | out | `" << entry.ref.sha256.digest
                         << "` | " << entry.ref.size << " |\n";
                }
            }
            out_ << "\n";
        }

        out_ << "## Manual metadata\n\n"
             << "- Intended purpose: " << p_.manual.intended_purpose << "\n"
             << "- Potential threats: " << p_.manual.potential_threats << "\n"
             << "- License: " << p_.manual.license << "\n"
             << "- Owner: " << p_.manual.owner << "\n";
        if (!p_.manual.description.empty()) {
            out_ << "- Description: " << p_.manual.description << "\n";
        }
        return std::move(out_).str();
    }

private:
    const passport::ModelPassport& p_;
    std::ostringstream out_;
};

} // namespace

std::string render(const passport::ModelPassport& p, const RenderOptions& options) {
    auto recomputed = passport::compute_identity(p);
    if (recomputed != p.identity) {
        throw Error(ErrorKind::SelfInconsistent,
                    "embedded identity " + p.identity + " != recomputed " + recomputed);
    }
    if (options.format == RenderOptions::Format::Markdown) {
        return MarkdownRenderer(p).run();
    }
    return HtmlRenderer(p, options).run();
}

} // namespace aimp::report
