// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/passport.hpp"
#include "aimp/pipeline.hpp"

#include <string>

namespace aimp::report {

struct RenderOptions {
    enum class Format { Html, Markdown };

    Format format = Format::Html;
    bool include_graph_svg = true; // html only
};

/// Renders the human-readable passport page: Identity, Datasets, Model,
/// Pipeline (inline SVG), Stage details, Manual metadata. The HTML is a
/// single self-contained page with inline CSS and no external requests;
/// output is a pure function of (passport, options). Throws SelfInconsistent
/// when the embedded identity does not recompute.
std::string render(const passport::ModelPassport& passport, const RenderOptions& options = {});

/// Layered left-to-right DAG drawing: one column per topological rank, rows
/// sorted by stage name, deterministic integer coordinates.
std::string render_dag_svg(const pipeline::Dag& dag);

/// The stage DAG reconstructed from a passport's lock summaries.
pipeline::Dag dag_from_passport(const passport::ModelPassport& passport);

} // namespace aimp::report
