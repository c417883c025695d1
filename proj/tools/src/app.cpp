#include "pvclass_cli/app.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "pvclass/classifier.hpp"
#include "pvclass/errors.hpp"
#include "pvclass/evaluation.hpp"
#include "pvclass/oracle.hpp"
#include "pvclass/rng.hpp"
#include "pvclass/simulation.hpp"
#include "pvclass/warnings.hpp"
#include "pvclass_cli/config.hpp"
#include "pvclass_cli/csv.hpp"
#include "pvclass_cli/writers.hpp"

namespace pvclass::cli {

using nlohmann::ordered_json;

namespace {

struct Flags {
  std::string config;
  std::string experiment;
  SessionConfig v;
  std::vector<std::pair<CLI::Option*, std::string>> options;  // option, JSON key
};

void add_shared(CLI::App* sub, Flags& f) {
  auto& v = f.v;
  auto add = [&](CLI::Option* o, const std::string& key) { f.options.emplace_back(o, key); };
  sub->add_option("--config", f.config, "JSON file with the same keys as the long flags");
  add(sub->add_option("--train", v.train, "training CSV"), "train");
  add(sub->add_option("--label", v.label, "name of the label column"), "label");
  add(sub->add_option("--method", v.methods, "plugin | knn | logistic | typicality"), "method");
  add(sub->add_option("--mode", v.modes, "exact-swap | valid-shortcut | naive"), "mode");
  add(sub->add_option("--alpha", v.alphas, "significance level (repeatable)"), "alpha");
  add(sub->add_option("--k", v.k, "neighbours for knn (0: ceil(n^(2/3)))"), "k");
  add(sub->add_flag("--scale-features", v.scale_features, "divide features by their standard deviation (knn)"),
      "scale-features");
  add(sub->add_option("--seed", v.seed, "master seed (drawn from entropy and printed when omitted)"), "seed");
  add(sub->add_option("--out", v.out, "output directory"), "out");
  add(sub->add_option("--format", v.formats, "csv | json | svg (repeatable)"), "format");
  add(sub->add_option("--threads", v.threads, "worker threads (0: hardware)"), "threads");
}

MethodConfig method_config(const SessionConfig& c, const std::string& method, const std::string& mode) {
  MethodConfig m;
  m.kind = parse_method_kind(method);
  m.mode = parse_permutation_mode(mode);
  m.k = c.k;
  m.scaling = c.scale_features ? FeatureScaling::per_feature_sd : FeatureScaling::none;
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Output {
 public:
  Output(const SessionConfig& c, std::ostream& log) : dir_(c.out), log_(log) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw UsageError("cannot create output directory '" + c.out + "': " + ec.message());
  }
  void write(const std::string& name, const std::string& content) {
    const auto path = (dir_ / name).string();
    write_text(path, content);
    log_ << "wrote " << path << '\n';
  }

 private:
  std::filesystem::path dir_;
  std::ostream& log_;
};

std::vector<std::string> canonical_names(std::size_t L) {
  std::vector<std::string> names;
  for (std::size_t t = 1; t <= L; ++t) names.push_back(std::to_string(t));
  return names;
}

GaussianMixtureModel make_model(const std::string& name) {
  return name == "example22" ? example22_model() : two_class_standard_model();
}

ordered_json pvalue_json(std::span<const double> p, const std::vector<std::string>& names,
                         const std::vector<double>& alphas) {
  ordered_json row;
  ordered_json pv = ordered_json::object();
  for (std::size_t t = 0; t < names.size(); ++t) pv[names[t]] = p[t];
  row["pvalues"] = pv;
  ordered_json regions = ordered_json::object();
  for (double a : alphas) {
    ordered_json members = ordered_json::array();
    const LabelSet m = region_mask(p, a);
    for (std::size_t t = 0; t < names.size(); ++t) {
      if (m & (LabelSet{1} << t)) members.push_back(names[t]);
    }
    regions[num(a)] = members;
  }
  row["regions"] = regions;
  return row;
}

std::string pvalue_header(const std::vector<std::string>& names, const std::vector<double>& alphas) {
  std::string h;
  for (const auto& n : names) h += "," + csv_field("p_" + n);
  for (double a : alphas) h += ",region_" + num(a);
  return h;
}

std::string pvalue_cells(std::span<const double> p, const std::vector<std::string>& names,
                         const std::vector<double>& alphas) {
  std::string s;
  for (double v : p) s += "," + num(v);
  for (double a : alphas) s += "," + csv_field(region_names(region_mask(p, a), names));
  return s;
}

void emit_charts(Output& o, const SessionConfig& c, const std::string& stem, const std::vector<ChartRow>& rows,
                 const std::vector<std::string>& names) {
  o.write(stem + "_pvalues.svg", pvalue_chart_svg(rows, names, stem + ": p-values (area proportional to p)"));
  for (double a : c.alphas) {
    o.write(stem + "_regions_" + num(a) + ".svg",
            region_chart_svg(rows, names, a, stem + ": prediction regions, alpha = " + num(a)));
  }
}

// --- classify ---------------------------------------------------------------

void cmd_classify(const SessionConfig& c, Output& o) {
  const LabeledTable train = training_from_csv(read_csv_file(c.train), c.label);
  const auto queries = queries_from_csv(read_csv_file(c.query), train.feature_names);
  const TrainingSet& d = train.data;
  const auto& names = d.label_names();
  const PValueClassifier clf(method_config(c, c.methods[0], c.modes[0]), d, c.alphas);
  std::vector<PValueVector> result(queries.size());
  parallel_for(queries.size(), [&](std::size_t i) { result[i] = clf.pvalues(queries[i]); }, c.threads);

  if (c.wants("csv")) {
    std::string s = "row" + pvalue_header(names, c.alphas) + "\n";
    for (std::size_t i = 0; i < queries.size(); ++i) {
      s += std::to_string(i + 1) + pvalue_cells(result[i].values(), names, c.alphas) + "\n";
    }
    o.write("classify.csv", s);
  }
  if (c.wants("json")) {
    ordered_json j;
    j["labels"] = names;
    j["alpha"] = c.alphas;
    j["group_sizes"] = ordered_json::array();
    for (std::size_t t = 0; t < names.size(); ++t) j["group_sizes"].push_back(d.group_size(ClassLabel::from_index(t)));
    j["rows"] = ordered_json::array();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      ordered_json row;
      row["row"] = i + 1;
      row.update(pvalue_json(result[i].values(), names, c.alphas));
      j["rows"].push_back(row);
    }
    o.write("classify.json", j.dump(2) + "\n");
  }
  if (c.wants("svg")) {
    std::vector<ChartRow> rows;
    for (std::size_t i = 0; i < queries.size(); ++i) rows.push_back({std::to_string(i + 1), result[i].values()});
    emit_charts(o, c, "classify", rows, names);
  }
}

// --- crossval ---------------------------------------------------------------

std::vector<std::vector<RocCurve>> crossval_rocs(const CrossValMatrix& cv) {
  const std::size_t L = cv.num_classes();
  std::vector<std::vector<RocCurve>> curves(L);
  for (std::size_t b = 0; b < L; ++b) {
    for (std::size_t t = 0; t < L; ++t) {
      curves[b].push_back(roc_curve(cv, ClassLabel::from_index(b), ClassLabel::from_index(t)));
    }
  }
  return curves;
}

std::string pattern_csv(const PatternTable& pt, const std::vector<std::string>& names) {
  const std::size_t L = pt.num_classes;
  std::string s = "class,N";
  for (const auto& n : names) s += "," + csv_field("contains_" + n);
  for (LabelSet p : pt.patterns) s += "," + csv_field("equals_" + region_names(p, names));
  s += "\n";
  for (std::size_t b = 0; b < L; ++b) {
    const auto yb = ClassLabel::from_index(b);
    s += csv_field(names[b]) + "," + std::to_string(pt.group_sizes[b]);
    for (std::size_t t = 0; t < L; ++t) s += "," + num(pt.inclusion_at(yb, ClassLabel::from_index(t)));
    for (std::size_t k = 0; k < pt.patterns.size(); ++k) s += "," + num(pt.pattern_at(yb, k));
    s += "\n";
  }
  return s;
}

void cmd_crossval(const SessionConfig& c, Output& o) {
  const LabeledTable train = training_from_csv(read_csv_file(c.train), c.label);
  const TrainingSet& d = train.data;
  const auto& names = d.label_names();
  const std::size_t L = d.num_classes();
  const MethodConfig method = method_config(c, c.methods[0], c.modes[0]);
  check_group_sizes(d, c.alphas);
  const CrossValMatrix cv = crossval_pvalues(d, method, c.threads);

  std::vector<LabelSet> requested;
  if (L <= 4) {
    for (LabelSet m = 1; m < (LabelSet{1} << L); ++m) requested.push_back(m);
  }
  std::vector<PatternTable> tables;
  for (double a : c.alphas) tables.push_back(pattern_table(cv, a, requested));
  const auto curves = crossval_rocs(cv);

  if (c.wants("csv")) {
    std::string s = "row,label" + pvalue_header(names, c.alphas) + "\n";
    for (std::size_t i = 0; i < cv.rows(); ++i) {
      s += std::to_string(i + 1) + "," + csv_field(names[cv.label(i).index()]) +
           pvalue_cells(cv.row(i), names, c.alphas) + "\n";
    }
    o.write("crossval_matrix.csv", s);
    for (const auto& pt : tables) o.write("patterns_" + num(pt.alpha) + ".csv", pattern_csv(pt, names));
    std::string r = "true_class,theta,alpha,one_minus_inclusion\n";
    for (std::size_t b = 0; b < L; ++b) {
      for (std::size_t t = 0; t < L; ++t) {
        const RocCurve& cur = curves[b][t];
        const std::string key = csv_field(names[b]) + "," + csv_field(names[t]) + ",";
        r += key + "0," + num(cur.value_at(0.0)) + "\n";
        for (double a : cur.breakpoints()) {
          if (a <= 0.0 || a >= 1.0) continue;
          r += key + num(a) + "," + num(cur.value_before(a)) + "\n";
          r += key + num(a) + "," + num(cur.value_at(a)) + "\n";
        }
        r += key + "1," + num(cur.value_at(1.0)) + "\n";
      }
    }
    o.write("roc.csv", r);
  }
  if (c.wants("json")) {
    ordered_json j;
    j["labels"] = names;
    j["method"] = c.methods[0];
    j["mode"] = c.modes[0];
    j["rows"] = cv.rows();
    j["tables"] = ordered_json::array();
    for (const auto& pt : tables) {
      ordered_json t;
      t["alpha"] = pt.alpha;
      t["risk"] = empirical_risk(cv, pt.alpha);
      t["group_sizes"] = pt.group_sizes;
      t["inclusion"] = ordered_json::object();
      t["pattern"] = ordered_json::object();
      for (std::size_t b = 0; b < L; ++b) {
        const auto yb = ClassLabel::from_index(b);
        ordered_json inc = ordered_json::object();
        for (std::size_t th = 0; th < L; ++th) inc[names[th]] = pt.inclusion_at(yb, ClassLabel::from_index(th));
        t["inclusion"][names[b]] = inc;
        ordered_json pat = ordered_json::object();
        for (std::size_t k = 0; k < pt.patterns.size(); ++k) pat[region_names(pt.patterns[k], names)] = pt.pattern_at(yb, k);
        t["pattern"][names[b]] = pat;
      }
      j["tables"].push_back(t);
    }
    o.write("crossval.json", j.dump(2) + "\n");
  }
  if (c.wants("svg")) {
    o.write("roc.svg", roc_svg(curves, names, "cross-validated ROC: alpha -> 1 - I_alpha(b, theta)"));
    std::vector<ChartRow> rows;
    for (std::size_t i = 0; i < cv.rows(); ++i) {
      const auto r = cv.row(i);
      rows.push_back({fmt::format("{} (Y={})", i + 1, names[cv.label(i).index()]), {r.begin(), r.end()}});
    }
    emit_charts(o, c, "crossval", rows, names);
  }
}

// --- simulate ---------------------------------------------------------------

void sim_validity(const SessionConfig& c, Output& o, std::ostream& out) {
  ValidityConfig vc;
  vc.model = make_model(c.model);
  const std::size_t L = vc.model.num_classes();
  vc.sizes.assign(L, c.group_size);
  vc.alphas = c.alphas;
  vc.replications = c.replications;
  vc.seed = *c.seed;
  vc.threads = c.threads;
  std::vector<std::string> methods = c.methods;
  if (methods.empty()) {
    methods = {"plugin", "knn"};
    if (L == 2) methods.push_back("logistic");
  }
  const std::vector<std::string> modes = c.modes.empty() ? std::vector<std::string>{"exact-swap", "valid-shortcut"} : c.modes;
  for (const auto& m : methods) {
    if (m == "typicality") {
      vc.methods.push_back({m, method_config(c, m, "valid-shortcut")});
      continue;
    }
    for (const auto& mode : modes) vc.methods.push_back({m + "/" + mode, method_config(c, m, mode)});
  }
  const ValidityResult res = validity_experiment(vc);

  bool all_pass = true;
  std::string s = "method,theta,alpha,rate,std_error,bound,pass\n";
  out << fmt::format("{:<28} {:>5} {:>6} {:>8} {:>8}  {}\n", "method", "theta", "alpha", "rate", "bound", "result");
  for (const auto& cell : res.cells) {
    all_pass = all_pass && cell.pass;
    s += fmt::format("{},{},{},{},{},{},{}\n", cell.method, cell.theta.value(), num(cell.alpha), num(cell.rate),
                     num(cell.std_error), num(cell.bound), cell.pass ? "PASS" : "FAIL");
    out << fmt::format("{:<28} {:>5} {:>6} {:>8.4f} {:>8.4f}  {}\n", cell.method, cell.theta.value(), num(cell.alpha),
                       cell.rate, cell.bound, cell.pass ? "PASS" : "FAIL");
  }
  out << (all_pass ? "all cells PASS\n" : "some cells FAIL\n");

  if (c.wants("csv")) {
    o.write("validity.csv", s);
    std::string r = "method,theta,rank,count\n";
    for (std::size_t m = 0; m < vc.methods.size(); ++m) {
      for (std::size_t t = 0; t < res.rank_counts[m].size(); ++t) {
        for (std::size_t j = 0; j < res.rank_counts[m][t].size(); ++j) {
          r += fmt::format("{},{},{},{}\n", vc.methods[m].name, t + 1, j + 1, res.rank_counts[m][t][j]);
        }
      }
    }
    o.write("validity_ranks.csv", r);
  }
  if (c.wants("json")) {
    ordered_json j;
    j["replications"] = c.replications;
    j["group_size"] = c.group_size;
    j["all_pass"] = all_pass;
    j["cells"] = ordered_json::array();
    for (const auto& cell : res.cells) {
      j["cells"].push_back({{"method", cell.method}, {"theta", cell.theta.value()}, {"alpha", cell.alpha},
                            {"rate", cell.rate}, {"std_error", cell.std_error}, {"bound", cell.bound},
                            {"pass", cell.pass}});
    }
    j["rank_chisq"] = ordered_json::array();
    for (std::size_t m = 0; m < vc.methods.size(); ++m) {
      for (std::size_t t = 0; t < res.rank_counts[m].size(); ++t) {
        if (res.rank_counts[m][t].empty()) continue;
        j["rank_chisq"].push_back({{"method", vc.methods[m].name}, {"theta", t + 1},
                                   {"df", res.rank_counts[m][t].size() - 1},
                                   {"chisq", uniform_chisq(res.rank_counts[m][t])}});
      }
    }
    o.write("validity.json", j.dump(2) + "\n");
  }
}

void sim_convergence(const SessionConfig& c, Output& o, std::ostream& out) {
  ConvergenceConfig cc;
  cc.model = make_model(c.model);
  cc.schedule = c.schedule;
  cc.k = c.k;
  cc.queries = c.queries;
  cc.oracle_samples = c.mc_samples;
  cc.seed = *c.seed;
  cc.threads = c.threads;
  const auto rows = convergence_experiment(cc);
  std::string s = "n,k,knn_gap,plugin_gap\n";
  out << fmt::format("{:>8} {:>6} {:>10} {:>10}\n", "n", "k", "knn_gap", "plugin_gap");
  for (const auto& r : rows) {
    s += fmt::format("{},{},{},{}\n", r.n, r.k, num(r.knn_gap), num(r.plugin_gap));
    out << fmt::format("{:>8} {:>6} {:>10.5f} {:>10.5f}\n", r.n, r.k, r.knn_gap, r.plugin_gap);
  }
  if (c.wants("csv")) o.write("convergence.csv", s);
  if (c.wants("json")) {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) j.push_back({{"n", r.n}, {"k", r.k}, {"knn_gap", r.knn_gap}, {"plugin_gap", r.plugin_gap}});
    o.write("convergence.json", j.dump(2) + "\n");
  }
}

void sim_region_map(const SessionConfig& c, Output& o, std::ostream& out) {
  Lattice lat;
  lat.nx = lat.ny = c.grid;
  std::vector<RegionMap> maps;
  std::vector<std::string> names;
  if (c.source == "oracle") {
    const auto model = make_model(c.model);
    names = canonical_names(model.num_classes());
    maps = oracle_region_maps(model, c.alphas, lat, c.mc_samples, *c.seed, c.threads);
  } else {
    TrainingSet d;
    if (c.source == "train") {
      d = training_from_csv(read_csv_file(c.train), c.label).data;
    } else {
      const auto model = make_model(c.model);
      d = sample_gaussian_mixture(model, std::vector<std::size_t>(model.num_classes(), c.group_size), *c.seed);
    }
    if (d.dim() != 2) throw UsageError("region maps need two features, found " + std::to_string(d.dim()));
    names = d.label_names();
    const PValueClassifier clf(method_config(c, c.methods[0], c.modes[0]), d, c.alphas);
    maps = data_region_maps(clf, c.alphas, lat, c.threads);
  }
  const std::size_t L = names.size();
  ordered_json summary = ordered_json::array();
  for (const auto& m : maps) {
    std::map<LabelSet, std::size_t> counts;
    for (LabelSet s : m.masks) ++counts[s];
    out << "alpha " << num(m.alpha) << ":";
    ordered_json pc = ordered_json::object();
    for (const auto& [s, n] : counts) {
      out << ' ' << region_names(s, names) << '=' << n;
      pc[region_names(s, names)] = n;
    }
    out << '\n';
    summary.push_back({{"alpha", m.alpha}, {"grid", c.grid}, {"pattern_counts", pc}});
    if (c.wants("csv")) {
      std::string s = "x,y,region\n";
      for (std::size_t iy = 0; iy < lat.ny; ++iy) {
        for (std::size_t ix = 0; ix < lat.nx; ++ix) {
          s += num(lat.x(ix)) + "," + num(lat.y(iy)) + "," + csv_field(region_names(m.at(ix, iy), names)) + "\n";
        }
      }
      o.write("region_map_" + num(m.alpha) + ".csv", s);
    }
    if (c.wants("svg")) {
      o.write("region_map_" + num(m.alpha) + ".svg",
              region_map_svg(m, names, fmt::format("{} regions, alpha = {}", c.source, num(m.alpha))));
    }
  }
  if (c.wants("json")) {
    ordered_json j;
    j["labels"] = names;
    j["classes"] = L;
    j["maps"] = summary;
    o.write("region_map.json", j.dump(2) + "\n");
  }
}

int execute(SessionConfig& c, std::ostream& out) {
  if (!c.seed) c.seed = entropy_seed();
  out << "seed: " << *c.seed << '\n';
  Output o(c, out);
  o.write("config.json", to_json(c));
  if (c.command == "classify") {
    cmd_classify(c, o);
  } else if (c.command == "crossval") {
    cmd_crossval(c, o);
  } else if (c.experiment == "validity") {
    sim_validity(c, o, out);
  } else if (c.experiment == "convergence") {
    sim_convergence(c, o, out);
  } else {
    sim_region_map(c, o, out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-value classification: prediction regions, cross-validation and simulations"};
  app.name("pvclass");
  app.require_subcommand(1, 1);

  Flags classify;
  Flags crossval;
  Flags simulate;
  auto* c1 = app.add_subcommand("classify", "p-values and prediction regions for query rows");
  add_shared(c1, classify);
  classify.options.emplace_back(c1->add_option("--query", classify.v.query, "query CSV (feature columns by name)"),
                                "query");
  auto* c2 = app.add_subcommand("crossval", "leave-one-out p-values, pattern tables and ROC curves");
  add_shared(c2, crossval);
  auto* c3 = app.add_subcommand("simulate", "validity, convergence and region-map experiments");
  c3->add_option("experiment", simulate.experiment, "validity | convergence | region-map")->required();
  add_shared(c3, simulate);
  {
    auto& v = simulate.v;
    auto& opts = simulate.options;
    opts.emplace_back(c3->add_option("--model", v.model, "two-class | example22"), "model");
    opts.emplace_back(c3->add_option("--source", v.source, "region-map source: oracle | sample | train"), "source");
    opts.emplace_back(c3->add_option("--replications", v.replications, "validity replications"), "replications");
    opts.emplace_back(c3->add_option("--group-size", v.group_size, "training points per class"), "group-size");
    opts.emplace_back(c3->add_option("--n", v.schedule, "convergence training sizes (repeatable)"), "n");
    opts.emplace_back(c3->add_option("--queries", v.queries, "convergence query points"), "queries");
    opts.emplace_back(c3->add_option("--mc-samples", v.mc_samples, "Monte Carlo reference draws per class"),
                      "mc-samples");
    opts.emplace_back(c3->add_option("--grid", v.grid, "lattice points per axis"), "grid");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const WarningHandler previous =
      set_warning_handler([&err](const std::string& msg) { err << "warning: " << msg << '\n'; });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(std::move(h)); }
  } restore{previous};

  try {
    Flags& f = c1->parsed() ? classify : c2->parsed() ? crossval : simulate;
    SessionConfig config;
    config.command = c1->parsed() ? "classify" : c2->parsed() ? "crossval" : "simulate";
    config.experiment = f.experiment;
    if (!f.config.empty()) apply_json(config, read_file(f.config));
    // flags given on the command line win over the file
    ordered_json given = ordered_json::object();
    for (const auto& [opt, key] : f.options) {
      if (opt->count() == 0) continue;
      const auto& v = f.v;
      if (key == "train") given[key] = v.train;
      else if (key == "query") given[key] = v.query;
      else if (key == "label") given[key] = v.label;
      else if (key == "method") given[key] = v.methods;
      else if (key == "mode") given[key] = v.modes;
      else if (key == "alpha") given[key] = v.alphas;
      else if (key == "k") given[key] = v.k;
      else if (key == "scale-features") given[key] = v.scale_features;
      else if (key == "seed") given[key] = *v.seed;
      else if (key == "out") given[key] = v.out;
      else if (key == "format") given[key] = v.formats;
      else if (key == "threads") given[key] = v.threads;
      else if (key == "model") given[key] = v.model;
      else if (key == "source") given[key] = v.source;
      else if (key == "replications") given[key] = v.replications;
      else if (key == "group-size") given[key] = v.group_size;
      else if (key == "n") given[key] = v.schedule;
      else if (key == "queries") given[key] = v.queries;
      else if (key == "mc-samples") given[key] = v.mc_samples;
      else if (key == "grid") given[key] = v.grid;
    }
    apply_json(config, given.dump());
    finalize(config);
    return execute(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CsvError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const DegenerateFitError& e) {
    err << "error: numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  }
}

}  // namespace pvclass::cli
