// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

// aimp: run ML pipelines as checksummed DAGs, record lifecycle provenance,
// and assemble verifiable model passports.

#include "aimp/dcat.hpp"
#include "aimp/error.hpp"
#include "aimp/passport.hpp"
#include "aimp/pipeline.hpp"
#include "aimp/provgraph.hpp"
#include "aimp/report.hpp"
#include "aimp/runner.hpp"
#include "aimp/store.hpp"
#include "aimp/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using aimp::Error;
using aimp::ErrorKind;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 verification failure, 2 configuration/spec error,
// 3 stage execution failure, 4 network error, 5 internal error.
int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DigestMismatch:
    case ErrorKind::CorruptObject:
    case ErrorKind::SelfInconsistent:
        return 1;
    case ErrorKind::ExecutionFailed:
    case ErrorKind::MissingOut:
        return 3;
    case ErrorKind::NetworkError:
    case ErrorKind::Unauthorized:
    case ErrorKind::HttpStatus:
        return 4;
    case ErrorKind::IoError:
    case ErrorKind::Internal:
        return 5;
    default:
        return 2;
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw Error(ErrorKind::IoError, "write error on " + path.string());
    }
}

aimp::pipeline::PipelineSpec load_workspace_pipeline() {
    if (!fs::exists(aimp::pipeline::kPipelineFile)) {
        throw Error(ErrorKind::BadValue,
                    std::string("no ") + aimp::pipeline::kPipelineFile +
                        " in the current directory (run 'aimp init' first)");
    }
    return aimp::pipeline::load_pipeline(aimp::pipeline::kPipelineFile);
}

std::string require_token(const std::string& env_name) {
    const char* value = std::getenv(env_name.c_str());
    if (!value || !*value) {
        throw Error(ErrorKind::BadValue,
                    "environment variable " + env_name + " is unset or empty");
    }
    return value;
}

const char* kPipelineTemplate = R"(# Pipeline definition.
#
# Each stage declares a shell command, its file dependencies, its outputs,
# and the params.yaml keys it reads. Stage order is derived from the
# outs -> deps graph; every out must be produced by exactly one stage.
#
# name: scopes the provenance identifiers minted for this workspace.
name: workspace
stages:
  example:
    cmd: "mkdir -p data && echo hello > data/out.txt"
    deps: []
    outs: [data/out.txt]
    params: []

# Optional: tie the passport's training record to one stage.
# training:
#   stage: Train
#   model: models/model.bin
#   metrics: metrics/metrics.json
)";

const char* kParamsTemplate = R"(# Parameters referenced by pipeline stages, flattened to dotted keys.
# Example:
# image_size: 256
# train:
#   epochs: 10
)";

int cmd_init(const std::string& dir) {
    fs::path root = dir.empty() ? fs::current_path() : fs::path(dir);
    if (!fs::exists(root)) {
        throw Error(ErrorKind::IoError, "directory does not exist: " + root.string());
    }
    auto report = [](const fs::path& path, bool created) {
        std::cout << (created ? "created " : "exists  ") << path.string() << "\n";
    };

    auto store_dir = root / aimp::pipeline::kStoreDir / "objects";
    bool had_store = fs::exists(store_dir);
    std::error_code ec;
    fs::create_directories(store_dir, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create " + store_dir.string() + ": " + ec.message());
    }
    report(root / aimp::pipeline::kStoreDir, !had_store);

    const std::pair<const char*, std::string> files[] = {
        {aimp::pipeline::kPipelineFile, kPipelineTemplate},
        {aimp::pipeline::kParamsFile, kParamsTemplate},
        {aimp::pipeline::kManualFile, aimp::passport::scaffold_manual_template()},
    };
    for (const auto& [name, content] : files) {
        auto path = root / name;
        if (fs::exists(path)) {
            report(path, false); // never clobber user edits
        } else {
            write_file(path, content);
            report(path, true);
        }
    }
    return 0;
}

int cmd_run(bool force, const std::string& only_stage, int jobs) {
    auto spec = load_workspace_pipeline();
    aimp::cas::Store store(fs::current_path() / aimp::pipeline::kStoreDir);
    aimp::pipeline::RunOptions options;
    options.force = force;
    options.only_stage = only_stage;
    options.jobs = jobs;

    auto result = aimp::pipeline::run_pipeline(spec, fs::current_path(), store, options);
    for (const auto& outcome : result.outcomes) {
        std::cout << outcome.name << ": " << to_string(outcome.state);
        if (outcome.state == aimp::pipeline::StageOutcomeState::Fresh ||
            outcome.state == aimp::pipeline::StageOutcomeState::Failed) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), " (%.2fs)", outcome.seconds);
            std::cout << buf;
        }
        if (!outcome.message.empty()) {
            std::cout << " - " << outcome.message;
        }
        std::cout << "\n";
    }
    if (result.failure) {
        std::cerr << "error: " << result.failure->what() << "\n";
        return exit_code_for(result.failure->kind());
    }
    return 0;
}

int cmd_status(bool as_json) {
    auto spec = load_workspace_pipeline();
    auto lock = aimp::pipeline::load_lock(aimp::pipeline::kLockFile);
    auto report = aimp::pipeline::status(spec, lock, fs::current_path());

    std::ostream& human = as_json ? std::cerr : std::cout;
    for (const auto& stage : spec.stages) {
        human << stage.name << ": " << to_string(report.at(stage.name)) << "\n";
    }
    if (as_json) {
        json stages = json::object();
        for (const auto& [name, reason] : report) {
            stages[name] = to_string(reason);
        }
        std::cout << json{{"stages", std::move(stages)}}.dump() << "\n";
    }
    return 0;
}

int cmd_harvest(const std::string& url, const std::string& out_file, int retries) {
    aimp::dcat::HarvestOptions options;
    options.retries = retries;
    auto result = aimp::dcat::harvest(url, options);
    for (const auto& warning : result.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    aimp::passport::save_datasets_file(out_file, result);
    std::cout << "harvested " << result.descriptors.size() << " dataset(s) from " << url
              << " -> " << out_file << "\n";
    return 0;
}

int cmd_passport_build(const std::string& manual_file, const std::string& datasets_file,
                       std::string out_file) {
    auto spec = load_workspace_pipeline();
    auto lock = aimp::pipeline::load_lock(aimp::pipeline::kLockFile);

    auto manual = aimp::passport::load_manual(manual_file);
    aimp::prov::ProvGraph graph;
    aimp::pipeline::record_execution(lock, spec, graph);
    auto summaries = aimp::passport::summarize_lock(lock, spec);
    auto training = aimp::passport::build_training_record(spec, lock, fs::current_path());

    std::vector<aimp::passport::HarvestedDataset> datasets;
    if (!datasets_file.empty()) {
        datasets = aimp::passport::load_datasets_file(datasets_file);
    } else if (fs::exists(aimp::pipeline::kDatasetsFile)) {
        datasets = aimp::passport::load_datasets_file(aimp::pipeline::kDatasetsFile);
    }

    auto passport = aimp::passport::assemble(std::move(datasets), std::move(graph),
                                             std::move(summaries), std::move(training),
                                             std::move(manual));

    if (out_file.empty()) {
        auto base = passport.manual.model_name.empty() ? "model" : passport.manual.model_name;
        out_file = base + ".passport.json";
    }
    write_file(out_file, aimp::passport::serialize(passport, aimp::passport::Format::CanonicalJson));

    auto ttl_file = out_file;
    if (ttl_file.size() > 5 && ttl_file.substr(ttl_file.size() - 5) == ".json") {
        ttl_file = ttl_file.substr(0, ttl_file.size() - 5) + ".ttl";
    } else {
        ttl_file += ".ttl";
    }
    write_file(ttl_file, aimp::passport::serialize(passport, aimp::passport::Format::Turtle));

    std::cout << "passport identity: " << passport.identity << "\n"
              << "wrote " << out_file << " and " << ttl_file << "\n";
    return 0;
}

int cmd_passport_verify(const std::string& file, const std::string& model,
                        const std::string& workspace, bool as_json) {
    auto passport = aimp::passport::load_file(file);
    std::optional<fs::path> workspace_path;
    std::optional<fs::path> model_path;
    if (!workspace.empty()) workspace_path = workspace;
    if (!model.empty()) model_path = model;

    auto report = aimp::passport::verify(passport, workspace_path, model_path);
    std::ostream& human = as_json ? std::cerr : std::cout;
    for (const auto& check : report.checks) {
        human << check.name << ": " << to_string(check.status);
        if (!check.detail.empty() && check.status != aimp::passport::CheckStatus::Pass) {
            human << " (" << check.detail << ")";
        }
        human << "\n";
    }
    bool passed = report.passed();
    human << (passed ? "verification passed" : "verification FAILED") << "\n";
    if (as_json) {
        json checks = json::array();
        for (const auto& check : report.checks) {
            checks.push_back(
                {{"name", check.name}, {"status", to_string(check.status)}, {"detail", check.detail}});
        }
        std::cout << json{{"checks", std::move(checks)}, {"passed", passed}}.dump() << "\n";
    }
    return passed ? 0 : 1;
}

int cmd_report(const std::string& file, const std::string& format, std::string out_file) {
    auto passport = aimp::passport::load_file(file);
    aimp::report::RenderOptions options;
    std::string extension;
    if (format == "markdown" || format == "md") {
        options.format = aimp::report::RenderOptions::Format::Markdown;
        extension = ".md";
    } else if (format == "html") {
        options.format = aimp::report::RenderOptions::Format::Html;
        extension = ".html";
    } else {
        throw Error(ErrorKind::BadValue, "unknown report format '" + format + "'");
    }
    if (out_file.empty()) {
        out_file = file;
        if (out_file.size() > 5 && out_file.substr(out_file.size() - 5) == ".json") {
            out_file = out_file.substr(0, out_file.size() - 5);
        }
        out_file += extension;
    }
    write_file(out_file, aimp::report::render(passport, options));
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

int cmd_push(const std::string& remote, const std::string& token_env) {
    aimp::cas::Store store(fs::current_path() / aimp::pipeline::kStoreDir);
    auto summary = aimp::cas::push(store, remote, require_token(token_env));
    std::cout << "pushed " << summary.transferred << " object(s), " << summary.skipped
              << " already present\n";
    return 0;
}

int cmd_pull(const std::string& remote, const std::string& token_env,
             const std::vector<std::string>& digests) {
    if (digests.empty()) {
        throw Error(ErrorKind::BadValue, "pull needs at least one sha256 digest argument");
    }
    aimp::cas::Store store(fs::current_path() / aimp::pipeline::kStoreDir);
    auto summary = aimp::cas::pull(store, remote, require_token(token_env), digests);
    std::cout << "pulled " << summary.transferred << " object(s), " << summary.skipped
              << " already present\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"aimp: pipeline provenance tracking and AI model passports"};
    app.set_version_flag("--version", aimp::kVersion);
    app.require_subcommand(1);

    std::string chdir_to;
    app.add_option("-C", chdir_to, "Change to this directory before doing anything");

    auto* init = app.add_subcommand("init", "Initialize a workspace (store + config templates)");
    std::string init_dir;
    init->add_option("dir", init_dir, "Directory to initialize (default: current)");

    auto* run = app.add_subcommand("run", "Execute stale pipeline stages and update aimp.lock");
    bool run_force = false;
    std::string run_stage;
    int run_jobs = 1;
    run->add_flag("--force", run_force, "Re-run every stage regardless of the cache");
    run->add_option("--stage", run_stage, "Run only this stage");
    run->add_option("--jobs", run_jobs, "Run up to N independent stages concurrently")
        ->check(CLI::PositiveNumber);

    auto* status_cmd = app.add_subcommand("status", "Report per-stage staleness");
    bool status_json = false;
    status_cmd->add_flag("--json", status_json, "Emit one canonical-JSON document on stdout");

    auto* harvest = app.add_subcommand("harvest", "Harvest dataset descriptors from a FAIR Data Point");
    std::string harvest_url;
    std::string harvest_out = aimp::pipeline::kDatasetsFile;
    int harvest_retries = 0;
    harvest->add_option("url", harvest_url, "FDP URL serving text/turtle")->required();
    harvest->add_option("--out", harvest_out, "Output Turtle file");
    harvest->add_option("--retries", harvest_retries, "Retries after network failures");

    auto* passport_cmd = app.add_subcommand("passport", "Build or verify model passports");
    passport_cmd->require_subcommand(1);
    auto* build = passport_cmd->add_subcommand("build", "Assemble the passport from the workspace");
    std::string build_manual = aimp::pipeline::kManualFile;
    std::string build_datasets;
    std::string build_out;
    build->add_option("--manual", build_manual, "Manual metadata file");
    build->add_option("--datasets", build_datasets, "Harvested datasets Turtle file");
    build->add_option("--out", build_out, "Passport output path (default <model>.passport.json)");

    auto* verify = passport_cmd->add_subcommand("verify", "Re-verify a passport");
    std::string verify_file, verify_model, verify_workspace;
    bool verify_json = false;
    verify->add_option("file", verify_file, "Passport JSON file")->required();
    verify->add_option("--model", verify_model, "Model artifact to check against the passport");
    verify->add_option("--workspace", verify_workspace, "Workspace to check lock-recorded files in");
    verify->add_flag("--json", verify_json, "Emit one canonical-JSON document on stdout");

    auto* report_cmd = app.add_subcommand("report", "Render a passport as HTML or Markdown");
    std::string report_file, report_out, report_format = "html";
    report_cmd->add_option("file", report_file, "Passport JSON file")->required();
    report_cmd->add_option("--format", report_format, "html or markdown");
    report_cmd->add_option("--out", report_out, "Output path (default next to the passport)");

    auto* push = app.add_subcommand("push", "Upload store objects to a remote");
    std::string push_remote, push_token_env;
    push->add_option("--remote", push_remote, "Remote base URL")->required();
    push->add_option("--token-env", push_token_env, "Environment variable holding the session token")
        ->required();

    auto* pull = app.add_subcommand("pull", "Download objects from a remote by digest");
    std::string pull_remote, pull_token_env;
    std::vector<std::string> pull_digests;
    pull->add_option("--remote", pull_remote, "Remote base URL")->required();
    pull->add_option("--token-env", pull_token_env, "Environment variable holding the session token")
        ->required();
    pull->add_option("digests", pull_digests, "sha256 digests to fetch");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help/--version are 0; bad usage is a config error
    }

    try {
        if (!chdir_to.empty()) {
            std::error_code ec;
            fs::current_path(chdir_to, ec);
            if (ec) {
                throw Error(ErrorKind::IoError, "cannot chdir to " + chdir_to);
            }
        }
        if (*init) return cmd_init(init_dir);
        if (*run) return cmd_run(run_force, run_stage, run_jobs);
        if (*status_cmd) return cmd_status(status_json);
        if (*harvest) return cmd_harvest(harvest_url, harvest_out, harvest_retries);
        if (*build) return cmd_passport_build(build_manual, build_datasets, build_out);
        if (*verify) return cmd_passport_verify(verify_file, verify_model, verify_workspace, verify_json);
        if (*report_cmd) return cmd_report(report_file, report_format, report_out);
        if (*push) return cmd_push(push_remote, push_token_env);
        if (*pull) return cmd_pull(pull_remote, pull_token_env, pull_digests);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
