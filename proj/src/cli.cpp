#include "fish/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "fish/error.hpp"
#include "fish/eval.hpp"
#include "fish/exact.hpp"
#include "fish/fish.hpp"
#include "fish/json_io.hpp"
#include "fish/synth.hpp"
#include "text_util.hpp"

namespace fish {

using nlohmann::json;

nlohmann::json config_json(const RunConfig& c) {
  json ingest{{"id_col", c.ingest.id_col},
              {"x_col", c.ingest.x_col},
              {"y_col", c.ingest.y_col},
              {"hot_col", c.ingest.hot_col},
              {"protected_cols", c.ingest.protected_cols},
              {"coords", c.ingest.coord_mode == CoordMode::kPlanar ? "planar" : "geo"},
              {"delimiter", std::string(1, c.ingest.delimiter)},
              {"category_orders", c.ingest.category_orders}};
  return json{{"subcommand", c.subcommand},
              {"dataset", c.dataset_path},
              {"spots", c.spots_path},
              {"output", c.output_path},
              {"trace", c.trace_path},
              {"ingest_config", c.ingest_config_path},
              {"spec", c.spec_path},
              {"ingest", ingest},
              {"m", c.m},
              {"k", c.k},
              {"tau", c.tau},
              {"b", c.b},
              {"max_fraction", c.max_fraction},
              {"seed", c.seed},
              {"n_objects", c.n_objects},
              {"n_clusters", c.n_clusters},
              {"threads", c.threads},
              {"guard", c.guard},
              {"spacing", c.spacing == SpacingMode::kIndex ? "index" : "arc"}};
}

namespace {

json metadata(const RunConfig& config) {
  return json{{"tool", "fish-hotspots"}, {"version", kVersion}, {"config", config_json(config)}};
}

json schemas_json(const Dataset& ds) { return json(ds.schemas()); }

void write_json(const std::string& path, const json& doc) {
  detail::write_file(path, doc.dump(2) + "\n");
}

void require_input(const std::string& path, const char* what) {
  if (path.empty()) fail(ErrorKind::kConfig, std::string("missing ") + what + " path");
  if (!std::filesystem::is_regular_file(path)) {
    fail(ErrorKind::kConfig, std::string(what) + " not found: " + path);
  }
}

void require_output(const std::string& path, const char* what) {
  if (path.empty()) fail(ErrorKind::kConfig, std::string("missing ") + what + " path");
  const auto parent = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(parent)) {
    fail(ErrorKind::kConfig, std::string(what) + " directory does not exist: " + parent.string());
  }
}

class Runner {
 public:
  Runner(RunConfig config, std::ostream& out, std::ostream& err)
      : c_(std::move(config)), out_(out), err_(err) {
    if (c_.guard == 0) c_.guard = candidate_guard_from_env();
  }

  void execute() {
    const std::string& cmd = c_.subcommand;
    if (cmd == "synth") return synth();
    validate_paths();
    if (!c_.ingest_config_path.empty()) merge_ingest_config();
    if (cmd == "scan") return scan();
    if (cmd == "import") return import();
    if (cmd == "fish") return fish();
    if (cmd == "exact") return exact();
    if (cmd == "eval") return eval();
    if (cmd == "export-nf") return export_nf();
    fail(ErrorKind::kConfig, "unknown subcommand '" + cmd + "'");
  }

 private:
  void validate_paths() {
    require_input(c_.dataset_path, "dataset");
    if (!c_.ingest_config_path.empty()) require_input(c_.ingest_config_path, "ingest config");
    if (c_.subcommand != "scan") require_input(c_.spots_path, "hot spot list");
    require_output(c_.output_path, "output");
    if (!c_.trace_path.empty()) require_output(c_.trace_path, "trace");
    if (c_.k < 1) fail(ErrorKind::kConfig, "k must be at least 1");
    if (c_.tau < 2) fail(ErrorKind::kConfig, "tau must be at least 2");
    if (c_.b < 1) fail(ErrorKind::kConfig, "b must be at least 1");
    if (c_.m < 1) fail(ErrorKind::kConfig, "m must be at least 1");
  }

  // Flags given on the command line win over the file.
  void merge_ingest_config() {
    IngestConfig file = load_ingest_config(c_.ingest_config_path);
    const IngestConfig defaults;
    IngestConfig& cli = c_.ingest;
    if (cli.id_col == defaults.id_col) cli.id_col = file.id_col;
    if (cli.x_col == defaults.x_col) cli.x_col = file.x_col;
    if (cli.y_col == defaults.y_col) cli.y_col = file.y_col;
    if (cli.hot_col == defaults.hot_col) cli.hot_col = file.hot_col;
    if (cli.protected_cols.empty()) cli.protected_cols = file.protected_cols;
    if (!coord_flag_given_) cli.coord_mode = file.coord_mode;
    if (cli.delimiter == defaults.delimiter) cli.delimiter = file.delimiter;
    for (const auto& [col, order] : file.category_orders) cli.category_orders.emplace(col, order);
  }

 public:
  bool coord_flag_given_ = false;

 private:
  Dataset dataset() const { return load_csv(c_.dataset_path, c_.ingest); }

  RankedHotSpotList spots(const Dataset& ds) {
    RankedHotSpotList list = import_ranked_list(c_.spots_path, ds);
    if (list.m() < c_.m) {
      err_ << "warning: hot spot list has " << list.m() << " entries, fewer than m=" << c_.m
           << "; using all of them\n";
    }
    return list.top(c_.m);
  }

  json header(const Dataset* ds) const {
    json doc{{"metadata", metadata(c_)}};
    if (ds != nullptr) doc["metadata"]["schemas"] = schemas_json(*ds);
    return doc;
  }

  void synth() {
    require_output(c_.output_path, "output");
    SynthSpec spec = default_synth_spec();
    if (!c_.spec_path.empty()) {
      require_input(c_.spec_path, "synth spec");
      spec = parse_synth_spec(detail::read_file(c_.spec_path));
    }
    const Dataset ds = generate_synthetic(c_.seed, c_.n_objects, c_.n_clusters, spec);
    IngestConfig ingest = synthetic_ingest_config(spec);
    ingest.delimiter = c_.ingest.delimiter;
    json meta = metadata(c_);
    meta["synth_spec"] = json::parse(synth_spec_json(spec));
    detail::write_file(c_.output_path, "# " + meta.dump() + "\n" + format_csv(ds, ingest));
    std::ostringstream sidecar;
    sidecar << "# ingest settings for " << c_.output_path << "\n";
    sidecar << "protected_cols = ";
    for (std::size_t i = 0; i < ingest.protected_cols.size(); ++i) {
      sidecar << (i ? "," : "") << ingest.protected_cols[i];
    }
    sidecar << "\n";
    for (const auto& [col, order] : ingest.category_orders) {
      sidecar << "order." << col << " = ";
      for (std::size_t i = 0; i < order.size(); ++i) sidecar << (i ? "," : "") << order[i];
      sidecar << "\n";
    }
    if (ingest.delimiter == '\t') sidecar << "delimiter = \\t\n";
    else if (ingest.delimiter != ',') sidecar << "delimiter = " << ingest.delimiter << "\n";
    detail::write_file(c_.output_path + ".ingest", sidecar.str());
    out_ << "wrote " << ds.size() << " objects (" << ds.hot_count() << " hot) to "
         << c_.output_path << "\n";
  }

  void scan() {
    const Dataset ds = dataset();
    ScanOptions opts{c_.max_fraction, c_.m, c_.threads};
    const RankedHotSpotList list = scan_circular(ds, opts);
    json doc = header(&ds);
    doc["warning"] = list.short_list
                         ? json("found " + std::to_string(list.m()) +
                                " zones with positive LLR, fewer than requested")
                         : json(nullptr);
    doc.update(json(list));
    write_json(c_.output_path, doc);
    if (list.short_list) err_ << "warning: " << doc["warning"].get<std::string>() << "\n";
    out_ << "wrote " << list.m() << " hot spots to " << c_.output_path << "\n";
  }

  void import() {
    const Dataset ds = dataset();
    const RankedHotSpotList list = import_ranked_list(c_.spots_path, ds);
    json doc = header(&ds);
    doc.update(json(list));
    write_json(c_.output_path, doc);
    out_ << "imported " << list.m() << " hot spots to " << c_.output_path << "\n";
  }

  void fish() {
    const Dataset ds = dataset();
    const RankedHotSpotList list = spots(ds);
    const FishOptions opts{c_.threads, c_.spacing};
    const DpeResult result = fish_search(list, ds, c_.k, c_.tau, c_.b, opts);
    json doc = header(&ds);
    doc["result"] = result;
    write_json(c_.output_path, doc);
    if (!c_.trace_path.empty()) {
      json trace = header(&ds);
      trace["levels"] = beam_trace(list, ds, c_.k, c_.tau, c_.b, opts);
      write_json(c_.trace_path, trace);
    }
    report(result);
  }

  void exact() {
    const Dataset ds = dataset();
    const RankedHotSpotList list = spots(ds);
    const ExactOptions opts{c_.guard, c_.threads, c_.spacing};
    const DpeResult result = exact_tau_dpe(list, ds, c_.k, c_.tau, opts);
    json doc = header(&ds);
    doc["result"] = result;
    write_json(c_.output_path, doc);
    report(result);
  }

  void eval() {
    const Dataset ds = dataset();
    const RankedHotSpotList list = spots(ds);
    EvalOptions opts{{c_.guard, c_.threads, c_.spacing}, {c_.threads, c_.spacing}};
    const MetricReport rep = evaluate(list, ds, c_.k, c_.tau, c_.b, opts);
    json doc = header(&ds);
    doc["report"] = rep;
    write_json(c_.output_path, doc);
    auto show = [&](const char* name, const std::optional<double>& v) {
      out_ << name << " = ";
      if (v) out_ << *v;
      else out_ << "n/a";
      out_ << "\n";
    };
    show("dc", rep.dc);
    show("cov_fish", rep.cov_fish);
    show("cov_exact", rep.cov_exact);
    show("md_fish", rep.md_fish);
    show("md_exact", rep.md_exact);
    for (const auto& note : rep.notes) err_ << "note: " << note << "\n";
  }

  void export_nf() {
    const Dataset ds = dataset();
    const RankedHotSpotList list = spots(ds);
    const ExactOptions eopts{c_.guard, c_.threads, c_.spacing};
    const NFSpace space = enumerate_nf_space(list, ds, c_.k, eopts);
    const NormalizedSpace norm = normalize(space);
    const Frontier fr = frontier(space.candidates);
    const DpeResult ex = exact_tau_dpe(space, c_.tau, c_.spacing);
    const DpeResult fi = fish_search(list, ds, c_.k, c_.tau, c_.b, {c_.threads, c_.spacing});
    auto key_set = [](const std::vector<Candidate>& cs) {
      std::set<std::vector<int>> keys;
      for (const auto& c : cs) keys.insert(c.sel.ranks);
      return keys;
    };
    const auto on_frontier = key_set(fr.candidates);
    const auto in_exact = key_set(ex.chosen);
    const auto in_fish = key_set(fi.chosen);
    std::ostringstream csv;
    csv << "# " << header(&ds).dump() << "\n";
    csv << "ranks,n,f,n_norm,f_norm,on_frontier,in_exact,in_fish\n";
    for (const auto& c : space.candidates) {
      const NFPoint p = norm.map(c.point);
      for (std::size_t i = 0; i < c.sel.ranks.size(); ++i) {
        csv << (i ? ";" : "") << c.sel.ranks[i];
      }
      csv << ',' << detail::format_double(c.point.n) << ',' << detail::format_double(c.point.f)
          << ',' << detail::format_double(p.n) << ',' << detail::format_double(p.f) << ','
          << on_frontier.count(c.sel.ranks) << ',' << in_exact.count(c.sel.ranks) << ','
          << in_fish.count(c.sel.ranks) << '\n';
    }
    detail::write_file(c_.output_path, csv.str());
    out_ << "wrote " << space.candidates.size() << " candidates to " << c_.output_path << "\n";
  }

  void report(const DpeResult& r) {
    out_ << to_string(r.method) << ": " << r.chosen.size() << " candidates in "
         << r.runtime_seconds << " s\n";
    for (const auto& c : r.chosen) {
      out_ << "  {";
      for (std::size_t i = 0; i < c.sel.ranks.size(); ++i) out_ << (i ? "," : "") << c.sel.ranks[i];
      out_ << "}  n=" << c.point.n << "  f=" << c.point.f << "\n";
    }
    if (r.shortfall) err_ << "warning: frontier holds fewer than tau candidates\n";
  }

  RunConfig c_;
  std::ostream& out_;
  std::ostream& err_;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kCapacity: return kExitCapacity;
    case ErrorKind::kSchema:
    case ErrorKind::kValue:
    case ErrorKind::kIntegrity:
    case ErrorKind::kDomain: return kExitData;
  }
  return kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair spatial hot spot selection: pareto-efficient, diverse k-subsets of a "
               "ranked hot spot list",
               "fish-hotspots"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig config;
  std::string protected_cols;
  std::vector<std::string> orders;
  std::string delimiter = ",";
  std::string spacing = "index";
  bool geo = false;
  bool planar = false;

  auto add_ingest = [&](CLI::App* sub) {
    sub->add_option("-d,--dataset", config.dataset_path, "Dataset CSV")->required();
    sub->add_option("--ingest-config", config.ingest_config_path,
                    "key = value file with ingestion settings");
    sub->add_option("--id-col", config.ingest.id_col, "Id column")->capture_default_str();
    sub->add_option("--x-col", config.ingest.x_col, "x / latitude column")->capture_default_str();
    sub->add_option("--y-col", config.ingest.y_col, "y / longitude column")->capture_default_str();
    sub->add_option("--hot-col", config.ingest.hot_col, "Binary hotness column")
        ->capture_default_str();
    sub->add_option("--protected-cols", protected_cols,
                    "Comma-separated protected attribute columns");
    sub->add_option("--category-order", orders,
                    "Explicit category order, as column=A,B,C (repeatable)");
    sub->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
    auto* g = sub->add_flag("--geo", geo, "Coordinates are lat/long degrees (haversine km)");
    auto* p = sub->add_flag("--planar", planar, "Coordinates are planar x/y (default)");
    g->excludes(p);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
  };
  auto add_search = [&](CLI::App* sub, bool with_b) {
    sub->add_option("-i,--spots", config.spots_path, "Ranked hot spot list (JSON)")->required();
    sub->add_option("-m", config.m, "Use the top m hot spots")->capture_default_str();
    sub->add_option("-k", config.k, "Hot spots per candidate")->capture_default_str();
    sub->add_option("--tau", config.tau, "Candidates returned")->capture_default_str();
    if (with_b) sub->add_option("-b", config.b, "Beam width")->capture_default_str();
    sub->add_option("--spacing", spacing, "Frontier spacing: index or arc")
        ->check(CLI::IsMember({"index", "arc"}))
        ->capture_default_str();
  };
  auto add_guard = [&](CLI::App* sub) {
    sub->add_option("--guard", config.guard,
                    "Maximum C(m,k) to enumerate (default: FISH_GUARD_CANDIDATES or 5000000)");
  };

  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic dataset");
  synth->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  synth->add_option("--objects", config.n_objects, "Number of objects")->capture_default_str();
  synth->add_option("--clusters", config.n_clusters, "Planted hot clusters")->capture_default_str();
  synth->add_option("--spec", config.spec_path, "Generator spec (JSON)");
  synth->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
  synth->add_option("-o,--output", config.output_path, "Output CSV")->required();

  auto* scan = app.add_subcommand("scan", "Circular Bernoulli scan producing a ranked list");
  add_ingest(scan);
  add_common(scan);
  scan->add_option("--max-fraction", config.max_fraction, "Largest zone as share of objects")
      ->capture_default_str();
  scan->add_option("-m", config.m, "Hot spots to report")->capture_default_str();
  scan->add_option("-o,--output", config.output_path, "Output JSON")->required();

  auto* imp = app.add_subcommand("import", "Validate an externally ranked hot spot list");
  add_ingest(imp);
  imp->add_option("-i,--spots", config.spots_path, "External ranked list (JSON)")->required();
  imp->add_option("-o,--output", config.output_path, "Output JSON")->required();

  auto* fish = app.add_subcommand("fish", "Approximate τ-dpe via beam search");
  add_ingest(fish);
  add_common(fish);
  add_search(fish, true);
  fish->add_option("-o,--output", config.output_path, "Output JSON")->required();
  fish->add_option("--trace", config.trace_path, "Write every beam level (JSON)");

  auto* exact = app.add_subcommand("exact", "Exact τ-dpe by full enumeration");
  add_ingest(exact);
  add_common(exact);
  add_search(exact, false);
  add_guard(exact);
  exact->add_option("-o,--output", config.output_path, "Output JSON")->required();

  auto* eval = app.add_subcommand("eval", "Run FiSH and Exact and compute DC, Cov and MD");
  add_ingest(eval);
  add_common(eval);
  add_search(eval, true);
  add_guard(eval);
  eval->add_option("-o,--output", config.output_path, "Output JSON")->required();

  auto* exp = app.add_subcommand("export-nf", "Write the full N-F scatter as CSV");
  add_ingest(exp);
  add_common(exp);
  add_search(exp, true);
  add_guard(exp);
  exp->add_option("-o,--output", config.output_path, "Output CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
    config.ingest.protected_cols = detail::split_list(protected_cols, ',');
    for (const auto& spec : orders) {
      auto eq = spec.find('=');
      if (eq == std::string::npos) {
        fail(ErrorKind::kConfig, "--category-order expects column=A,B,C");
      }
      config.ingest.category_orders[spec.substr(0, eq)] =
          detail::split_list(spec.substr(eq + 1), ',');
    }
    if (delimiter == "\\t" || delimiter == "tab") delimiter = "\t";
    if (delimiter.size() != 1) fail(ErrorKind::kConfig, "--delimiter must be one character");
    config.ingest.delimiter = delimiter[0];
    config.ingest.coord_mode = geo ? CoordMode::kGeographic : CoordMode::kPlanar;
    config.spacing = spacing == "arc" ? SpacingMode::kArcLength : SpacingMode::kIndex;

    Runner runner(config, out, err);
    runner.coord_flag_given_ = geo || planar;
    runner.execute();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fish
