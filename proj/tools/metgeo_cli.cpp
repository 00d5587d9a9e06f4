// metgeo: command-line front end. Reports are JSON (CSV for tables), with a
// versioned "schema" field. Exit status: 0 ok, 1 check failed or
// precondition violated, 2 usage or input error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "metgeo/cube_lab.hpp"
#include "metgeo/embeddings.hpp"
#include "metgeo/error.hpp"
#include "metgeo/families.hpp"
#include "metgeo/hyperbolic_models.hpp"
#include "metgeo/hyperbolicity.hpp"
#include "metgeo/io.hpp"
#include "metgeo/metric_core.hpp"
#include "metgeo/metrization.hpp"

namespace {

using metgeo::DistanceMatrix;
using metgeo::io::Json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string output = "-";
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

void write_text(const Globals& g, const std::string& text) {
  if (g.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw metgeo::StructuralError("cannot write '" + g.output + "'");
  out << text;
}

void emit(const Globals& g, const Json& j) { write_text(g, metgeo::io::dump_json(j)); }

Json with_schema(const std::string& command) {
  Json j;
  j["schema"] = "metgeo." + command + "/1";
  return j;
}

template <std::size_t N>
Json labels_of(const DistanceMatrix& d, const std::array<std::size_t, N>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(d.label(i));
  return out;
}

Json matrix_report(const std::string& command, const DistanceMatrix& d) {
  Json j = with_schema(command);
  j["labels"] = d.labels();
  j["d"] = d.rows();
  return j;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string file;
  bool ptolemy = false, metric = false, quasi = false;
  double tol = 1e-9, eq_tol = 1e-7;
  std::size_t max_equalities = 100;
};

int run_check(const Globals& g, const CheckArgs& a) {
  const auto d = metgeo::io::read_matrix(a.file);
  const bool all = !a.ptolemy && !a.metric && !a.quasi;
  Json j = with_schema("check");
  j["points"] = d.size();
  bool ok = true;
  if (all || a.metric) {
    const auto r = metgeo::check_metric_axioms(d, a.tol);
    Json m;
    m["is_metric"] = r.is_metric;
    m["violation_count"] = r.violations.size();
    Json v = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(r.violations.size(), a.max_equalities); ++i) {
      v.push_back(labels_of(d, r.violations[i]));
    }
    m["violations"] = v;
    j["metric"] = m;
    ok = ok && r.is_metric;
  }
  if (all || a.ptolemy) {
    metgeo::PtolemyOptions opt;
    opt.tol = a.tol;
    opt.equality_tol = a.eq_tol;
    opt.max_equalities = a.max_equalities;
    opt.threads = g.threads;
    const auto r = metgeo::ptolemy_check(d, opt);
    Json p;
    p["satisfied"] = r.satisfied;
    p["quadruples_checked"] = r.quadruples_checked;
    p["worst_slack"] = r.worst_slack;
    p["worst_quadruple"] = r.worst_quadruple ? labels_of(d, *r.worst_quadruple) : Json();
    p["equality_count"] = r.equality_count;
    Json eq = Json::array();
    for (const auto& q : r.equality_quadruples) eq.push_back(labels_of(d, q));
    p["equality_quadruples"] = eq;
    j["ptolemy"] = p;
    ok = ok && r.satisfied;
  }
  if (all || a.quasi) j["quasi_metric_constant"] = metgeo::quasi_metric_constant(d);
  j["passed"] = ok;
  emit(g, j);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- metrize

int run_metrize(const Globals& g, const std::string& file, double power) {
  const auto input = metgeo::io::read_matrix(file);
  const auto rho = power == 1.0 ? input : metgeo::snowflake(input, power);
  const auto q = metgeo::QuasiMetricSpace::from(rho);
  const auto r = metgeo::chain_metric(rho);
  Json j = with_schema("metrize");
  j["power"] = power;
  j["quasi_metric_constant"] = q.K;
  j["distortion"] = r.distortion;
  j["witness_pair"] = r.witness_pair ? Json::array({rho.label(r.witness_pair->first), rho.label(r.witness_pair->second)})
                                     : Json();
  bool ok = true;
  if (q.K <= 2.0 + 1e-12) {
    const auto f = metgeo::frink_bound_check(q);
    j["frink_bound_holds"] = f.holds;
    ok = f.holds;
  }
  j["labels"] = r.ca.labels();
  j["d"] = r.ca.rows();
  emit(g, j);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- distortion-curve

struct CurveArgs {
  std::vector<std::string> files;
  std::string family;
  std::vector<int> sizes;
  double s_min = 0.25, s_max = 4.0;
  std::size_t points = 25;
  double threshold = 1.1;
  bool estimate = false;
};

std::vector<metgeo::QuasiMetricSpace> build_family(const CurveArgs& a) {
  std::vector<metgeo::QuasiMetricSpace> family;
  if (!a.family.empty()) {
    for (int n : a.sizes) {
      DistanceMatrix d = a.family == "kovalev"       ? metgeo::families::kovalev_segment(n)
                         : a.family == "path"        ? metgeo::families::path_graph(n)
                         : a.family == "ultrametric" ? metgeo::families::binary_ultrametric(n)
                                                     : metgeo::families::l1_ball_lattice(3, n);
      family.push_back(metgeo::QuasiMetricSpace::from(std::move(d)));
    }
  } else {
    for (const auto& f : a.files) family.push_back(metgeo::QuasiMetricSpace::from(metgeo::io::read_matrix(f)));
  }
  return family;
}

int run_curve(const Globals& g, const CurveArgs& a) {
  if (a.files.empty() == a.family.empty()) {
    throw metgeo::StructuralError("give matrix files or --family, not both");
  }
  const auto grid = metgeo::geometric_grid(a.s_min, a.s_max, a.points);
  const auto family = build_family(a);
  if (family.empty()) throw metgeo::StructuralError("--family needs --sizes");

  if (!a.estimate && family.size() == 1) {
    const auto curve = metgeo::distortion_curve(family.front(), grid);
    std::ostringstream out;
    out << "s,distortion\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out << metgeo::io::format_double(curve.s_values[k]) << ',' << metgeo::io::format_double(curve.c_values[k])
          << '\n';
    }
    write_text(g, out.str());
    return kOk;
  }

  const auto est = metgeo::estimate_critical_exponent(family, grid, a.threshold);
  Json j = with_schema("distortion-curve");
  j["heuristic"] = true;
  j["threshold"] = a.threshold;
  Json sizes = Json::array();
  for (const auto& q : family) sizes.push_back(q.matrix.size());
  j["family_sizes"] = sizes;
  j["lower"] = est.lower;
  j["upper"] = est.upper ? Json(*est.upper) : Json("inf");
  Json rows = Json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Json r;
    r["s"] = grid[k];
    r["distortions"] = est.distortions[k];
    r["divergent"] = static_cast<bool>(est.divergent[k]);
    rows.push_back(r);
  }
  j["curve"] = rows;
  emit(g, j);
  return kOk;
}

// ---------------------------------------------------------------- hyperbolicity

int run_hyperbolicity(const Globals& g, const std::string& file) {
  const auto d = metgeo::io::read_matrix(file);
  const auto s = metgeo::delta_global(d, g.threads);
  Json j = with_schema("hyperbolicity");
  Json per = Json::object();
  for (std::size_t o = 0; o < d.size(); ++o) per[d.label(o)] = s.delta_per_basepoint[o];
  j["delta_per_basepoint"] = per;
  j["delta_global"] = s.delta;
  j["worst_basepoint"] = d.label(s.worst_basepoint);
  j["doubling_bound_holds"] = s.doubling_bound_holds;
  bool k_ok = true;
  Json kc = Json::array();
  for (std::size_t o = 0; o < d.size() && d.size() >= 2; ++o) {
    const auto q = metgeo::boundary_quasimetric(d, o);
    const double bound = std::exp(s.delta_per_basepoint[o]);
    const bool holds = q.K <= bound + 1e-9;
    k_ok = k_ok && holds;
    Json e;
    e["basepoint"] = d.label(o);
    e["K"] = q.K;
    e["exp_delta"] = bound;
    e["holds"] = holds;
    kc.push_back(e);
  }
  j["K_bound_check"] = kc;
  emit(g, j);
  return s.doubling_bound_holds && k_ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- examples

struct ExampleArgs {
  double a = 1.0, b = 1.0, c = 1.0;
  bool scan = false;
  std::vector<double> grid{0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
  int n = 100;
  int dim = 2;
  int k = 3;
  std::size_t count = 4;
  double basepoint_radius = 0.0;
};

int run_scan(const Globals& g, const ExampleArgs& a) {
  const auto entries = metgeo::hyperbolic::admissible_parameter_scan(a.grid, a.grid, a.grid);
  Json j = with_schema("examples.six-point-scan");
  Json rows = Json::array();
  std::size_t admissible = 0;
  for (const auto& e : entries) {
    Json r;
    r["a"] = e.a;
    r["b"] = e.b;
    r["c"] = e.c;
    r["is_metric"] = e.is_metric;
    r["is_ptolemaic"] = e.is_ptolemaic;
    r["admissible"] = e.admissible();
    admissible += e.admissible();
    rows.push_back(r);
  }
  j["admissible_count"] = admissible;
  j["entries"] = rows;
  emit(g, j);
  return kOk;
}

// ---------------------------------------------------------------- cube

struct CubeArgs {
  std::vector<int> m{1, 2, 3};
  double q = 0.8;
  std::string target = "euclidean-snowflake";
  std::string target_file;
  std::string strategy = "both";
  double b = 0.0;
};

Json witness_json(const metgeo::cube::DiagonalWitness& w) {
  Json j;
  j["multiindex"] = w.k.values();
  j["vertex"] = w.vertex.str();
  j["opposite"] = w.opposite.str();
  j["endpoint_a"] = w.endpoint_a.str();
  j["endpoint_b"] = w.endpoint_b.str();
  j["length"] = w.length;
  j["bound"] = w.bound;
  j["within_bound"] = w.length <= w.bound * (1.0 + 1e-9);
  return j;
}

int run_cube(const Globals& g, const CubeArgs& a) {
  namespace cube = metgeo::cube;
  cube::DiagonalOptions options;
  options.seed = g.seed;
  Json j = with_schema("cube");
  bool ok = true;

  if (a.target == "file") {
    if (a.target_file.empty()) throw metgeo::StructuralError("--target file needs --target-file");
    auto d = metgeo::io::read_matrix(a.target_file);
    const int m = cube::BitIndex::parse(d.label(0)).weight();
    const cube::CubeTarget target(std::move(d), m);
    double b = a.b;
    if (b <= 0.0) {
      const auto& slice = target.slice();
      for (std::size_t i = 0; i < slice.size(); ++i)
        for (std::size_t k = i + 1; k < slice.size(); ++k)
          if (cube::hamming_distance(slice[i], slice[k]) == 2) b = std::max(b, target.distance(slice[i], slice[k]));
    }
    j["m"] = m;
    j["n"] = target.n();
    j["b"] = b;
    j["q"] = a.q;
    j["c_slice"] = cube::slice_snowflake_constant(target, a.q);
    for (auto [name, s] : {std::pair{"brute", cube::Strategy::Brute}, std::pair{"inductive", cube::Strategy::Inductive}}) {
      if (a.strategy != "both" && a.strategy != name) continue;
      const auto w = cube::find_short_diagonal(target, b, s, options);
      j[name] = witness_json(w);
      ok = ok && w.length <= w.bound * (1.0 + 1e-9);
    }
    emit(g, j);
    return ok ? kOk : kCheckFailed;
  }
  if (a.target != "euclidean-snowflake") throw metgeo::StructuralError("unknown target '" + a.target + "'");

  Json sched = Json::array();
  for (const auto& n : cube::n_schedule(*std::max_element(a.m.begin(), a.m.end()))) sched.push_back(n.str());
  j["n_schedule"] = sched;
  const auto report = cube::snowflake_obstruction_experiment(
      a.q, a.m, [](int n, int m) { return cube::euclidean_slice_target(n, m); }, a.strategy != "brute", options);
  j["q"] = report.q;
  j["c"] = report.c;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["m"] = r.m;
    row["n"] = r.n;
    row["c_slice"] = r.c_slice;
    row["b"] = r.b;
    row["bound"] = r.bound;
    row["brute"] = witness_json(r.brute);
    row["inductive"] = r.inductive ? witness_json(*r.inductive) : Json();
    row["long_pair_lower"] = r.long_pair_lower;
    row["lhs"] = r.lhs;
    row["rhs"] = r.rhs;
    row["slack"] = r.slack;
    ok = ok && r.brute.length <= r.bound * (1.0 + 1e-9);
    if (r.inductive) ok = ok && r.inductive->length <= r.bound * (1.0 + 1e-9);
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["slack_decreasing"] = report.slack_decreasing;
  j["violation_m"] = report.violation_m ? Json(*report.violation_m) : Json();
  emit(g, j);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- embed

struct EmbedArgs {
  int dim = 3;
  int resolution = 512;
  std::size_t samples = 100;
  double scale = 0.25;
  std::size_t quadruples = 1000;
  std::string pairs_csv;
};

int run_embed(const Globals& g, const EmbedArgs& a) {
  namespace embed = metgeo::embed;
  std::mt19937_64 rng(g.seed);
  const auto points = embed::sample_l1_ball(a.dim, a.samples, rng);
  const auto report = embed::analyze_composite(points, a.resolution, a.scale, g.threads);

  if (!a.pairs_csv.empty()) {
    std::ofstream out(a.pairs_csv);
    if (!out) throw metgeo::StructuralError("cannot write '" + a.pairs_csv + "'");
    out << "i,j,l1_distance,image_distance\n";
    for (const auto& p : report.pairs) {
      out << report.chordal.label(p.i) << ',' << report.chordal.label(p.j) << ','
          << metgeo::io::format_double(p.l1) << ',' << metgeo::io::format_double(p.chordal) << '\n';
    }
  }

  // Stereographic sanity on sphere samples of the image dimension.
  const int n = a.dim * a.resolution;
  const auto sphere = embed::sample_sphere(n, std::max<std::size_t>(a.samples, 4), rng);
  double round_trip = 0.0;
  std::vector<embed::Vector> coords;
  for (const auto& x : sphere) {
    const auto back = embed::inverse_stereographic(embed::stereographic(x), n);
    round_trip = std::max(round_trip, (back.coords() - x.coords()).norm());
    coords.push_back(x.coords());
  }
  const auto defect = embed::mobius_check_map(
      [](const embed::Vector& x) { return embed::Vector(x.tail(x.size() - 1) / (1.0 - x[0])); }, coords,
      a.quadruples, g.seed);

  Json j = with_schema("embed");
  j["dim"] = a.dim;
  j["resolution"] = a.resolution;
  j["samples"] = a.samples;
  j["scale"] = a.scale;
  j["pairs"] = report.pairs.size();
  j["exponent"] = report.exponent;
  j["intercept"] = report.intercept;
  j["fit_constant"] = report.fit_constant;
  j["g_snowflake_constant"] = report.g_constant.c;
  j["ptolemy_satisfied"] = report.ptolemy.satisfied;
  j["ptolemy_worst_slack"] = report.ptolemy.worst_slack;
  j["stereographic_round_trip"] = round_trip;
  j["cross_ratio_defect"] = defect.max_defect;
  j["cross_ratio_quadruples"] = defect.quadruples_tested;
  emit(g, j);
  return report.ptolemy.satisfied ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- mobius

int run_mobius(const Globals& g, const std::string& first, const std::string& second, double tol) {
  const auto a = metgeo::io::read_matrix(first);
  Json j = with_schema("mobius");
  if (second.empty()) {
    const auto c = metgeo::canonical_four_point(a);
    j["a"] = c.a;
    j["b"] = c.b;
    j["order"] = labels_of(a, c.order);
    j["labels"] = c.normal_form.labels();
    j["d"] = c.normal_form.rows();
    emit(g, j);
    return kOk;
  }
  const auto b = metgeo::io::read_matrix(second);
  const auto r = metgeo::mobius_equivalent(a, b, tol);
  j["equivalent"] = r.equivalent;
  if (r.witness) {
    Json w;
    w["quadruple"] = r.witness->labels;
    w["first"] = r.witness->first;
    w["second"] = r.witness->second;
    j["witness"] = w;
  }
  emit(g, j);
  return r.equivalent ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric geometry toolkit: Ptolemy checks, metrization, hyperbolicity, cube and embedding experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("-o,--output", g.output, "Output file ('-' for stdout)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized steps");

  std::function<int()> action;

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "Metric axioms, Ptolemy inequality, quasi-metric constant");
  c_check->add_option("file", check.file)->required();
  c_check->add_flag("--ptolemy", check.ptolemy);
  c_check->add_flag("--metric", check.metric);
  c_check->add_flag("--quasi", check.quasi);
  c_check->add_option("--tol", check.tol, "Violation tolerance");
  c_check->add_option("--eq-tol", check.eq_tol, "Equality tolerance");
  c_check->add_option("--max-list", check.max_equalities, "Maximum listed quadruples/triples");
  c_check->callback([&] { action = [&] { return run_check(g, check); }; });

  std::string metrize_file;
  double power = 1.0;
  auto* c_metrize = app.add_subcommand("metrize", "Chain-approach metric of d^power");
  c_metrize->add_option("file", metrize_file)->required();
  c_metrize->add_option("--power", power)->check(CLI::PositiveNumber);
  c_metrize->callback([&] { action = [&] { return run_metrize(g, metrize_file, power); }; });

  CurveArgs curve;
  auto* c_curve = app.add_subcommand("distortion-curve", "Distortion of ca(rho^s) over an s grid");
  c_curve->add_option("files", curve.files);
  c_curve->add_option("--family", curve.family)->check(CLI::IsMember({"kovalev", "path", "ultrametric", "lattice"}));
  c_curve->add_option("--sizes", curve.sizes, "Family sizes (lattice: k, ultrametric: depth)");
  c_curve->add_option("--s-min", curve.s_min);
  c_curve->add_option("--s-max", curve.s_max);
  c_curve->add_option("--points", curve.points);
  c_curve->add_option("--threshold", curve.threshold, "Divergence threshold");
  c_curve->add_flag("--estimate", curve.estimate, "Critical exponent bracket (JSON)");
  c_curve->callback([&] { action = [&] { return run_curve(g, curve); }; });

  std::string hyp_file;
  auto* c_hyp = app.add_subcommand("hyperbolicity", "Gromov delta per basepoint and boundary quasi-metric bound");
  c_hyp->add_option("file", hyp_file)->required();
  c_hyp->callback([&] { action = [&] { return run_hyperbolicity(g, hyp_file); }; });

  ExampleArgs ex;
  auto* c_ex = app.add_subcommand("examples", "Emit example distance matrices");
  c_ex->require_subcommand(1);
  c_ex->fallthrough();
  auto* ex_glued = c_ex->add_subcommand("glued", "Bourdon metric of four glued ideal triangles");
  ex_glued->add_option("--a", ex.a)->required();
  ex_glued->add_option("--b", ex.b)->required();
  ex_glued->callback([&] {
    action = [&] {
      const auto q = metgeo::hyperbolic::glued_quadrilateral(ex.a, ex.b);
      Json j = matrix_report("examples.glued", q.metric.matrix);
      j["alpha"] = q.alpha;
      j["beta"] = q.beta;
      j["cone_angle"] = q.cone_angle;
      emit(g, j);
      return kOk;
    };
  });
  auto* ex_six = c_ex->add_subcommand("six-point", "Six-point metric on the coordinate frame");
  ex_six->add_option("--a", ex.a);
  ex_six->add_option("--b", ex.b);
  ex_six->add_option("--c", ex.c);
  ex_six->add_flag("--scan", ex.scan, "Scan a x b x c over --grid");
  ex_six->add_option("--grid", ex.grid);
  ex_six->callback([&] {
    action = [&] {
      if (ex.scan) return run_scan(g, ex);
      emit(g, matrix_report("examples.six-point", metgeo::hyperbolic::six_point_example(ex.a, ex.b, ex.c)));
      return kOk;
    };
  });
  auto* ex_kov = c_ex->add_subcommand("kovalev", "{0..n} with log(1 + |i-j|)");
  ex_kov->add_option("--n", ex.n);
  ex_kov->callback([&] {
    action = [&] {
      emit(g, matrix_report("examples.kovalev", metgeo::families::kovalev_segment(ex.n)));
      return kOk;
    };
  });
  auto* ex_path = c_ex->add_subcommand("path", "{0..n} with |i-j|");
  ex_path->add_option("--n", ex.n);
  ex_path->callback([&] {
    action = [&] {
      emit(g, matrix_report("examples.path", metgeo::families::path_graph(ex.n)));
      return kOk;
    };
  });
  auto* ex_lat = c_ex->add_subcommand("lattice", "(1/k) Z^dim in the l1 unit ball");
  ex_lat->add_option("--dim", ex.dim);
  ex_lat->add_option("--k", ex.k);
  ex_lat->callback([&] {
    action = [&] {
      emit(g, matrix_report("examples.lattice", metgeo::families::l1_ball_lattice(ex.dim, ex.k)));
      return kOk;
    };
  });
  auto* ex_hyp = c_ex->add_subcommand("hyperbolic", "Bourdon metric of random ideal points");
  ex_hyp->add_option("--dim", ex.dim);
  ex_hyp->add_option("--count", ex.count);
  ex_hyp->add_option("--basepoint-radius", ex.basepoint_radius);
  ex_hyp->callback([&] {
    action = [&] {
      std::mt19937_64 rng(g.seed);
      const auto config = metgeo::hyperbolic::random_ideal_config(ex.dim, ex.count, rng, ex.basepoint_radius);
      emit(g, matrix_report("examples.hyperbolic", metgeo::hyperbolic::bourdon_metric(config).matrix));
      return kOk;
    };
  });
  auto* ex_frame = c_ex->add_subcommand("frame", "Bourdon metric of +-e_i seen from the origin");
  ex_frame->add_option("--dim", ex.dim);
  ex_frame->callback([&] {
    action = [&] {
      const auto config = metgeo::hyperbolic::orthogonal_frame(ex.dim);
      emit(g, matrix_report("examples.frame", metgeo::hyperbolic::bourdon_metric(config).matrix));
      return kOk;
    };
  });

  CubeArgs cube;
  auto* c_cube = app.add_subcommand("cube", "Short diagonals in Hamming slices and the snowflake obstruction");
  c_cube->add_option("--m", cube.m, "Cube dimensions (each <= 3)");
  c_cube->add_option("--q", cube.q, "Snowflake exponent")->check(CLI::PositiveNumber);
  c_cube->add_option("--target", cube.target)->check(CLI::IsMember({"euclidean-snowflake", "file"}));
  c_cube->add_option("--target-file", cube.target_file, "Matrix labeled by bit strings");
  c_cube->add_option("--b", cube.b, "Side bound for file targets (default: measured)");
  c_cube->add_option("--strategy", cube.strategy)->check(CLI::IsMember({"inductive", "brute", "both"}));
  c_cube->callback([&] { action = [&] { return run_cube(g, cube); }; });

  EmbedArgs em;
  auto* c_embed = app.add_subcommand("embed", "Snowflake of the l1 ball onto a sphere");
  c_embed->add_option("--dim", em.dim)->check(CLI::PositiveNumber);
  c_embed->add_option("--resolution", em.resolution)->check(CLI::Range(2, 1 << 16));
  c_embed->add_option("--samples", em.samples)->check(CLI::Range(2, 100000));
  c_embed->add_option("--scale", em.scale)->check(CLI::PositiveNumber);
  c_embed->add_option("--quadruples", em.quadruples);
  c_embed->add_option("--pairs-csv", em.pairs_csv, "Write (l1, image) distance pairs");
  c_embed->callback([&] { action = [&] { return run_embed(g, em); }; });

  std::string inv_file, inv_at;
  auto* c_inv = app.add_subcommand("involute", "Involution d_z at a point");
  c_inv->add_option("file", inv_file)->required();
  c_inv->add_option("--at", inv_at)->required();
  c_inv->callback([&] {
    action = [&] {
      const auto dz = metgeo::involute(metgeo::io::read_matrix(inv_file), inv_at);
      Json j = matrix_report("involute", dz);
      j["at"] = inv_at;
      j["is_metric"] = metgeo::check_metric_axioms(dz).is_metric;
      emit(g, j);
      return kOk;
    };
  });

  std::string snow_file;
  double snow_q = 0.5;
  auto* c_snow = app.add_subcommand("snowflake", "Entrywise power d^q");
  c_snow->add_option("file", snow_file)->required();
  c_snow->add_option("--q", snow_q)->required();
  c_snow->callback([&] {
    action = [&] {
      Json j = matrix_report("snowflake", metgeo::snowflake(metgeo::io::read_matrix(snow_file), snow_q));
      j["q"] = snow_q;
      emit(g, j);
      return kOk;
    };
  });

  std::string mob_a, mob_b;
  double mob_tol = 1e-9;
  auto* c_mob = app.add_subcommand("mobius", "Cross-ratio comparison, or the normal form of one 4-point space");
  c_mob->add_option("first", mob_a)->required();
  c_mob->add_option("second", mob_b);
  c_mob->add_option("--tol", mob_tol);
  c_mob->callback([&] { action = [&] { return run_mobius(g, mob_a, mob_b, mob_tol); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const metgeo::PreconditionError& e) {
    std::cerr << "metgeo: precondition violated: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "metgeo: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "metgeo: invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "metgeo: " << e.what() << '\n';
    return kCheckFailed;
  }
}
