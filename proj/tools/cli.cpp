#include "cli.hpp"

#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/corpus.hpp"
#include "jcaudit/coupling.hpp"
#include "jcaudit/criteria.hpp"
#include "jcaudit/errors.hpp"
#include "jcaudit/format.hpp"
#include "jcaudit/report.hpp"
#include "jcaudit/synth.hpp"
#include "jcaudit/tsv.hpp"
#include "manifest.hpp"

#ifndef JCAUDIT_VERSION
#define JCAUDIT_VERSION "dev"
#endif

namespace jcaudit::cli {

namespace fs = std::filesystem;
using fmt_util::threshold_label;

AuditConfig resolve_config(const Options& opts) {
    AuditConfig cfg = opts.config ? load_config(*opts.config) : AuditConfig{};
    if (opts.alpha) cfg.alpha_list = *opts.alpha;
    if (opts.beta) cfg.beta_list = *opts.beta;
    if (opts.min_citations) cfg.min_citations = *opts.min_citations;
    cfg.validate();
    return cfg;
}

namespace {

// Maps the error taxonomy onto exit codes; diagnostics go to `err`.
template <class Fn>
int guarded(std::ostream& err, const char* command, Fn&& fn) {
    try {
        return fn();
    } catch (const IoError& e) {
        err << "jcaudit " << command << ": " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "jcaudit " << command << ": " << e.what() << '\n';
        return kExitIo;
    } catch (const InputError& e) {
        err << "jcaudit " << command << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "jcaudit " << command << ": internal error: " << e.what() << '\n';
        return kExitInput;
    }
}

struct LoadedInput {
    Corpus corpus;
    std::vector<std::pair<std::string, std::string>> digests;
};

LoadedInput load_input(const fs::path& dir, const AuditConfig& cfg) {
    if (!fs::is_directory(dir)) throw IoError(fmt::format("corpus directory '{}' does not exist", dir.string()));
    const auto paths = CorpusPaths::in_directory(dir);
    auto corpus = load_corpus(paths, cfg);
    std::vector<std::pair<std::string, std::string>> digests;
    for (const auto* p : {&paths.journals, &paths.categories, &paths.assignments, &paths.publications, &paths.citations})
        digests.emplace_back(p->filename().string(), sha256_file(*p));
    if (paths.references) digests.emplace_back(paths.references->filename().string(), sha256_file(*paths.references));
    return {std::move(corpus), std::move(digests)};
}

void finish(OutputTree& tree, RunManifest manifest, const fs::path& dest) {
    manifest.finished_utc = utc_now();
    tree.add("manifest.json", manifest.to_json(tree));
    tree.commit(dest);
}

fs::path require_out(const Options& opts) {
    if (!opts.out) throw InputError("--out is required");
    return *opts.out;
}

void warn_validation(const ValidationReport& v, std::ostream& err) {
    if (!v.unassigned_journals.empty())
        err << "warning: " << v.unassigned_journals.size() << " journal(s) have no category assignment\n";
    if (!v.empty_categories.empty())
        err << "warning: " << v.empty_categories.size() << " categor(y/ies) have no journals\n";
}

}  // namespace

int cmd_audit(const fs::path& corpus_dir, const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "audit", [&] {
        RunManifest manifest{JCAUDIT_VERSION, "audit", {}, {}, utc_now(), {}, opts.threads};
        const auto dest = require_out(opts);
        const auto cfg = resolve_config(opts);
        manifest.config_text = to_config_text(cfg);
        auto [corpus, digests] = load_input(corpus_dir, cfg);
        manifest.inputs = std::move(digests);

        const auto validation = validate_corpus(corpus);
        warn_validation(validation, err);
        const auto profiles = build_profiles(corpus, opts.threads);
        const auto fmt = opts.format;
        const auto ext = std::string(extension(fmt));
        auto as = [&](std::span<const FlagRecord> flags) {
            return fmt == ExportFormat::Json ? flags_to_json(flags, corpus) : flags_to_tsv(flags, corpus);
        };

        OutputTree tree;
        const auto stats = corpus_stats(corpus, profiles, cfg);
        tree.add("stats." + ext, export_stats(stats, fmt));
        tree.add("distribution.csv", export_distribution_csv(assignment_distribution(corpus)));
        tree.add("validation.tsv", validation_to_tsv(validation, corpus));
        tree.add("profiles.tsv", profiles_to_tsv(profiles, corpus));

        const auto sweep = threshold_sweep(profiles, corpus, cfg);
        tree.add("sweep_c1." + ext, export_sweep(sweep.c1, Criterion::C1, fmt));
        tree.add("sweep_c2." + ext, export_sweep(sweep.c2, Criterion::C2, fmt));
        for (double a : cfg.alpha_list)
            tree.add(fmt::format("flags_C1_{}.{}", threshold_label(a), ext), as(criterion_one(profiles, corpus, a, cfg)));
        for (double b : cfg.beta_list)
            tree.add(fmt::format("flags_C2_{}.{}", threshold_label(b), ext), as(criterion_two(profiles, corpus, b, cfg)));

        tree.add(fmt::format("rank_c1_{}.{}", threshold_label(cfg.focus_alpha), ext),
                 export_ranking(rank_problem_categories(profiles, corpus, cfg.focus_alpha, cfg.rank_min_journals,
                                                        cfg.rank_min_fraction, cfg),
                                corpus, fmt));
        tree.add(fmt::format("rank_c2_{}.{}", threshold_label(cfg.focus_beta), ext),
                 export_ranking(rank_missing_categories(profiles, corpus, cfg.focus_beta, cfg.rank_c2_min_count, cfg),
                                corpus, fmt));
        const auto both = combined(profiles, corpus, cfg.focus_alpha, cfg.focus_beta, cfg);
        tree.add(fmt::format("combined_{}_{}.{}", threshold_label(cfg.focus_alpha), threshold_label(cfg.focus_beta), ext),
                 fmt == ExportFormat::Json ? combined_to_json(both, corpus) : combined_to_tsv(both, corpus));

        finish(tree, std::move(manifest), dest);
        out << render_stats(stats) << '\n' << render_sweep(sweep);
        out << fmt::format("combined criterion (alpha={}, beta={}): {} journal(s)\n", threshold_label(cfg.focus_alpha),
                           threshold_label(cfg.focus_beta), both.size());
        return kExitOk;
    });
}

int cmd_drilldown(const fs::path& corpus_dir, const std::string& category, const Options& opts, std::ostream& out,
                  std::ostream& err) {
    return guarded(err, "drilldown", [&] {
        RunManifest manifest{JCAUDIT_VERSION, "drilldown " + category, {}, {}, utc_now(), {}, opts.threads};
        const auto dest = require_out(opts);
        // Here --alpha/--beta pick the single thresholds of the drill-down.
        Options base = opts;
        base.alpha.reset();
        base.beta.reset();
        auto cfg = resolve_config(base);
        auto single = [](const std::optional<std::vector<double>>& v, const char* name) -> std::optional<double> {
            if (!v) return std::nullopt;
            if (v->size() != 1) throw InputError(fmt::format("drilldown takes a single --{} value", name));
            return v->front();
        };
        if (auto a = single(opts.alpha, "alpha")) cfg.focus_alpha = *a;
        if (auto b = single(opts.beta, "beta")) cfg.focus_beta = *b;
        cfg.validate();
        manifest.config_text = to_config_text(cfg);

        auto [corpus, digests] = load_input(corpus_dir, cfg);
        manifest.inputs = std::move(digests);
        const auto cat = corpus.category_index(category);
        const auto profiles = build_profiles(corpus, opts.threads);
        const auto rep = field_drilldown(profiles, corpus, cat, cfg.focus_alpha, cfg.focus_beta, cfg);

        OutputTree tree;
        tree.add(fmt::format("drilldown_{}.{}", fmt_util::file_safe(category), extension(opts.format)),
                 export_drilldown(rep, corpus, opts.format));
        finish(tree, std::move(manifest), dest);
        out << fmt::format("{}: {} eligible journal(s); {} weak home assignment(s), {} candidate(s), {} weak other "
                           "assignment(s)\n",
                           category, rep.eligible_journals, rep.home_weak.size(), rep.candidates.size(),
                           rep.other_weak.size());
        return kExitOk;
    });
}

int cmd_couple(const fs::path& corpus_dir, const std::string& category, const Options& opts, std::ostream& out,
               std::ostream& err) {
    return guarded(err, "couple", [&] {
        RunManifest manifest{JCAUDIT_VERSION, "couple " + category, {}, {}, utc_now(), {}, opts.threads};
        const auto dest = require_out(opts);
        const auto cfg = resolve_config(opts);
        manifest.config_text = to_config_text(cfg);
        auto [corpus, digests] = load_input(corpus_dir, cfg);
        manifest.inputs = std::move(digests);
        if (!corpus.has_references()) throw MissingReferencesError();
        const auto cmp = compare_relation_kinds(corpus, category, cfg, opts.threads);

        OutputTree tree;
        const auto stem = "coupling_compare_" + fmt_util::file_safe(category);
        if (opts.format == ExportFormat::Json) {
            tree.add(stem + ".json", comparison_to_json(cmp, corpus));
        } else {
            tree.add(stem + ".tsv", comparison_to_tsv(cmp, corpus));
            std::string summary;
            tsv::append_row(summary, {"metric", "value"});
            tsv::append_row(summary, {"journals", std::to_string(cmp.rows.size())});
            tsv::append_row(summary, {"home_strongest_direct", std::to_string(cmp.home_strongest_direct)});
            tsv::append_row(summary, {"home_strongest_coupling", std::to_string(cmp.home_strongest_coupling)});
            tsv::append_row(summary, {"agreement_rate", fmt::format("{:.6f}", cmp.agreement_rate())});
            tree.add("coupling_summary_" + fmt_util::file_safe(category) + ".tsv", summary);
        }
        finish(tree, std::move(manifest), dest);
        out << fmt::format("{}: {} journal(s); home strongest: direct {}, coupling {}; agreement rate {:.2f}\n",
                           category, cmp.rows.size(), cmp.home_strongest_direct, cmp.home_strongest_coupling,
                           cmp.agreement_rate());
        return kExitOk;
    });
}

int cmd_stats(const fs::path& corpus_dir, const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "stats", [&] {
        const auto cfg = resolve_config(opts);
        auto [corpus, digests] = load_input(corpus_dir, cfg);
        const auto validation = validate_corpus(corpus);
        warn_validation(validation, err);
        const auto profiles = build_profiles(corpus, opts.threads);
        const auto stats = corpus_stats(corpus, profiles, cfg);
        const auto hist = assignment_distribution(corpus);
        const auto sweep = threshold_sweep(profiles, corpus, cfg);
        out << render_stats(stats) << '\n' << render_distribution(hist) << '\n' << render_sweep(sweep);
        out << fmt::format("self-citation edges: {}; out-of-window publications: {}\n",
                           validation.self_citation_edges, validation.out_of_window_publications.size());
        if (opts.out) {
            RunManifest manifest{JCAUDIT_VERSION, "stats", to_config_text(cfg), std::move(digests), utc_now(), {},
                                 opts.threads};
            OutputTree tree;
            const auto ext = std::string(extension(opts.format));
            tree.add("stats." + ext, export_stats(stats, opts.format));
            tree.add("distribution.csv", export_distribution_csv(hist));
            tree.add("validation.tsv", validation_to_tsv(validation, corpus));
            finish(tree, std::move(manifest), *opts.out);
        }
        return kExitOk;
    });
}

int cmd_synth(const fs::path& spec_path, const fs::path& out_dir, std::optional<std::uint64_t> seed, std::ostream& out,
              std::ostream& err) {
    return guarded(err, "synth", [&] {
        auto spec = synth::spec_from_json(tsv::read_text(spec_path));
        if (seed) spec.seed = *seed;
        const auto generated = synth::generate(spec);

        // Stage the corpus through a scratch directory so the output appears atomically.
        const fs::path scratch = fs::temp_directory_path() / fmt::format("jcaudit-synth-{}", ::getpid());
        std::error_code ec;
        fs::remove_all(scratch, ec);
        synth::write_synthetic(generated, spec, scratch);
        OutputTree tree;
        for (const auto& entry : fs::directory_iterator(scratch))
            tree.add(entry.path().filename().string(), tsv::read_text(entry.path()));
        fs::remove_all(scratch, ec);
        tree.commit(out_dir);

        out << fmt::format("wrote {} journals, {} publications, {} citations to {}\n",
                           generated.tables.journals.size(), generated.tables.publications.size(),
                           generated.tables.citations.size(), out_dir.string());
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit journal classification systems with citation-based relatedness criteria", "jcaudit"};
    app.set_version_flag("--version", JCAUDIT_VERSION);
    app.require_subcommand(1);

    Options opts;
    opts.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string config, outdir, alpha, beta, format = "tsv";
    std::uint64_t min_citations = 0;

    auto add_common = [&](CLI::App* sub, bool with_out_required) {
        sub->add_option("--config", config, "Flat key = value configuration file");
        auto* o = sub->add_option("--out", outdir, "Output directory");
        if (with_out_required) o->required();
        sub->add_option("--alpha", alpha, "Criterion I threshold(s), comma separated");
        sub->add_option("--beta", beta, "Criterion II threshold(s), comma separated");
        sub->add_option("--min-citations", min_citations, "Reporting cutoff on total citations t");
        sub->add_option("--threads", opts.threads, "Worker threads (default: machine parallelism)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"tsv", "json"}));
    };

    std::string corpus_dir, category, spec_path;
    std::uint64_t seed = 0;

    auto* audit = app.add_subcommand("audit", "Run the full audit and write every report");
    audit->add_option("corpus", corpus_dir, "Corpus directory")->required();
    add_common(audit, true);

    auto* drill = app.add_subcommand("drilldown", "Report on a single category");
    drill->add_option("corpus", corpus_dir, "Corpus directory")->required();
    drill->add_option("category", category, "Category id")->required();
    add_common(drill, true);

    auto* couple = app.add_subcommand("couple", "Compare direct-citation and bibliographic-coupling strongest categories");
    couple->add_option("corpus", corpus_dir, "Corpus directory")->required();
    couple->add_option("category", category, "Category id")->required();
    add_common(couple, true);

    auto* stats = app.add_subcommand("stats", "Print corpus statistics and threshold sweeps");
    stats->add_option("corpus", corpus_dir, "Corpus directory")->required();
    add_common(stats, false);

    auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus with planted errors");
    syn->add_option("spec", spec_path, "Synthetic spec (JSON)")->required();
    syn->add_option("--out", outdir, "Output directory")->required();
    auto* seed_opt = syn->add_option("--seed", seed, "Override the spec seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (!config.empty()) opts.config = config;
        if (!outdir.empty()) opts.out = outdir;
        if (!alpha.empty()) opts.alpha = parse_threshold_list(alpha);
        if (!beta.empty()) opts.beta = parse_threshold_list(beta);
        if (app.got_subcommand(syn) == false) {
            for (auto* sub : {audit, drill, couple, stats})
                if (sub->parsed() && sub->count("--min-citations")) opts.min_citations = min_citations;
        }
    } catch (const InputError& e) {
        err << "jcaudit: " << e.what() << '\n';
        return kExitInput;
    }
    opts.format = format == "json" ? ExportFormat::Json : ExportFormat::Tsv;

    if (audit->parsed()) return cmd_audit(corpus_dir, opts, out, err);
    if (drill->parsed()) return cmd_drilldown(corpus_dir, category, opts, out, err);
    if (couple->parsed()) return cmd_couple(corpus_dir, category, opts, out, err);
    if (stats->parsed()) return cmd_stats(corpus_dir, opts, out, err);
    return cmd_synth(spec_path, outdir, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt, out, err);
}

}  // namespace jcaudit::cli
