#pragma once

// Command-line front end. run() never touches std::cout or std::cerr, so it
// can be driven in-process by tests.
//
// Exit codes: 0 success, 2 invalid input (arguments, files, formulas),
// 3 a guard, search budget or iteration cap was hit.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zol/ambient.hpp"
#include "zol/asymptotics.hpp"
#include "zol/ef_game.hpp"
#include "zol/errors.hpp"
#include "zol/eval.hpp"
#include "zol/formula.hpp"
#include "zol/morphisms.hpp"
#include "zol/parser.hpp"
#include "zol/stochastics.hpp"
#include "zol/strategy.hpp"
#include "zol/structure.hpp"
#include "zol/structure_io.hpp"

namespace zol::cli {

namespace detail {

inline std::uint64_t to_u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

inline Json fraction_json(const FractionResult& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["total"] = to_u64(r.total);
  j["satisfied"] = to_u64(r.satisfied);
  j["fraction"] = to_string(r.fraction);
  j["value"] = r.value();
  if (r.mode == FractionMode::MonteCarlo) {
    j["samples"] = r.samples;
    j["seed"] = *r.seed;
    j["halfwidth"] = r.halfwidth;
  }
  return j;
}

inline std::string csv_double(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

// Atoms of the form "side:id" with side a or b.
inline std::pair<Side, VertexId> parse_pick(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("pick '" + text + "' must look like a:<vertex> or b:<vertex>");
  const std::string side = text.substr(0, colon);
  if (side != "a" && side != "b") throw ArgumentError("pick '" + text + "' must start with a: or b:");
  return {side == "a" ? Side::A : Side::B, text.substr(colon + 1)};
}

// The one-element structure with no tuples.
inline Structure singleton(const Vocabulary& v) { return Structure(v, 1); }

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

class Runner {
 public:
  explicit Runner(std::ostream& out) : out_(out) { build(); }

  CLI::App& app() { return app_; }

  void dispatch() {
    for (auto& [name, fn] : handlers_) {
      if (app_.got_subcommand(name)) {
        fn();
        return;
      }
    }
  }

 private:
  // Shared option storage; each subcommand binds the fields it needs.
  std::string gen_, gen2_, phi_, structure_, a_path_, b_path_, pattern_, host_, out_path_, p_text_ = "1/2",
      mode_ = "exact", format_ = "csv";
  std::vector<std::string> centers_, picks_, assigns_;
  std::size_t n_ = 0, n_max_ = 0, max_size_ = 0, m_ = 1, k_ = 2, depth_ = 0, radius_ = 0;
  std::uint64_t samples_ = 100000, sample_index_ = 0;
  std::optional<std::uint64_t> seed_;
  std::optional<std::size_t> radius_cap_;
  double tol_ = 1e-9;
  unsigned threads_ = 0;
  bool exact_ = false, closed_ = false;

  std::ostream& out_;
  CLI::App app_{"Finite-ball tools for zero-one laws on locally finite structures", "zol"};
  std::vector<std::pair<std::string, std::function<void()>>> handlers_;

  CLI::App* sub(const std::string& name, const std::string& help, std::function<void()> fn) {
    handlers_.emplace_back(name, std::move(fn));
    return app_.add_subcommand(name, help);
  }

  void add_gen(CLI::App* s) { s->add_option("--gen", gen_, "generator: z, grid2, tree:k, monoid:k, uutree")->required(); }
  void add_seed(CLI::App* s) { s->add_option("--seed", seed_, "random seed (required)")->required(); }

  std::unique_ptr<AmbientGenerator> generator() const { return make_generator(gen_); }

  std::vector<VertexId> centers(const AmbientGenerator& g) const {
    if (centers_.empty()) return {g.base_point()};
    return centers_;
  }

  // "@path" reads the formula from a file.
  Formula formula() const {
    if (!phi_.empty() && phi_[0] == '@') return parse_formula(read_text_file(phi_.substr(1)));
    return parse_formula(phi_);
  }

  // A ball from --gen/--center/--n or a structure from --structure.
  Structure structure_input() const {
    if (!structure_.empty()) {
      if (!gen_.empty()) throw ArgumentError("give either --structure or --gen, not both");
      return load_structure(structure_);
    }
    if (gen_.empty()) throw ArgumentError("give --structure FILE or --gen G with --n N");
    auto g = generator();
    return ball_of(*g, centers(*g), n_).structure;
  }

  Structure pattern_or_singleton(const AmbientGenerator& g) const {
    return pattern_.empty() ? detail::singleton(g.vocabulary()) : load_structure(pattern_);
  }

  double probability() const { return to_double(parse_probability(p_text_)); }

  void build() {
    app_.require_subcommand(1);
    app_.add_option("--threads", threads_, "worker threads (0 = all cores); output does not depend on it");

    auto* s = sub("ball", "print the exact ball B_n(centers) of a generator as patch JSON", [this] { cmd_ball(); });
    add_gen(s);
    s->add_option("--center", centers_, "center vertex id (repeatable; default base point)");
    s->add_option("--n", n_, "radius")->required();
    s->add_option("--out", out_path_, "write the patch to this file instead of stdout");

    s = sub("representatives", "one ball per isomorphism class of centered radius-n balls", [this] { cmd_reps(); });
    add_gen(s);
    s->add_option("--n", n_, "radius")->required();

    s = sub("eval", "evaluate a formula on a structure", [this] { cmd_eval(); });
    s->add_option("--structure", structure_, "structure JSON file");
    s->add_option("--gen", gen_, "use a generator ball instead of --structure");
    s->add_option("--center", centers_, "ball center (repeatable)");
    s->add_option("--n", n_, "ball radius");
    s->add_option("--phi", phi_, "formula, or @file")->required();
    s->add_option("--assign", assigns_, "free variable assignment var=element (repeatable)");

    s = sub("fraction", "fraction of substructures satisfying a sentence", [this] { cmd_fraction(); });
    s->add_option("--structure", structure_, "structure JSON file");
    s->add_option("--gen", gen_, "use a generator ball instead of --structure");
    s->add_option("--center", centers_, "ball center (repeatable)");
    s->add_option("--n", n_, "ball radius");
    s->add_option("--phi", phi_, "sentence, or @file")->required();
    s->add_option("--mode", mode_, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    s->add_option("--samples", samples_, "Monte Carlo samples");
    s->add_option("--seed", seed_, "random seed (required for mc)");

    s = sub("trajectory", "fractions on B_1..B_nmax per center", [this] { cmd_trajectory(); });
    add_gen(s);
    s->add_option("--center", centers_, "center vertex id (repeatable; default base point)");
    s->add_option("--phi", phi_, "sentence, or @file")->required();
    s->add_option("--n-max", n_max_, "largest radius")->required();
    s->add_option("--mode", mode_, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    s->add_option("--samples", samples_, "Monte Carlo samples per radius");
    s->add_option("--seed", seed_, "random seed (required for mc)");
    s->add_option("--format", format_, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    s = sub("ef", "decide the n-round Ehrenfeucht-Fraisse game", [this] { cmd_ef(); });
    s->add_option("--a", a_path_, "first structure JSON")->required();
    s->add_option("--b", b_path_, "second structure JSON")->required();
    s->add_option("--n", n_, "rounds")->required();

    s = sub("strategy-demo", "play the ball-isomorphism strategy against scripted picks", [this] { cmd_strategy(); });
    add_gen(s);
    s->add_option("--gen2", gen2_, "second generator (default: same as --gen)");
    s->add_option("--n", n_, "rounds")->required();
    s->add_option("--pick", picks_, "spoiler pick a:<id> or b:<id> (repeatable, in order)")->required();
    s->add_option("--radius-cap", radius_cap_, "ring search cap (default 4*5^n)");

    s = sub("embed", "decide whether a pattern embeds", [this] { cmd_embed(); });
    s->add_option("--gen", gen_, "ambient generator");
    s->add_option("--host", host_, "finite host structure JSON instead of --gen");
    s->add_option("--pattern", pattern_, "pattern structure JSON")->required();
    s->add_flag("--closed", closed_, "with --host: require a closed image");

    s = sub("sigma-axioms", "classify all patterns up to a size as in-class or excluded", [this] { cmd_sigma(); });
    add_gen(s);
    s->add_option("--max-size", max_size_, "largest pattern size")->required();

    s = sub("closed-copy", "probability of a closed copy in a random window substructure", [this] { cmd_closed_copy(); });
    add_gen(s);
    s->add_option("--pattern", pattern_, "pattern JSON (default: single element)");
    s->add_option("--radius", radius_, "window radius around the base point")->required();
    s->add_option("--p", p_text_, "retention probability (default 1/2)");
    s->add_option("--samples", samples_, "Monte Carlo samples");
    add_seed(s);
    s->add_flag("--exact", exact_, "also sum cone measures over every subset of the window");

    s = sub("percolate", "sample a random substructure of a ball", [this] { cmd_percolate(); });
    add_gen(s);
    s->add_option("--center", centers_, "center vertex id (repeatable; default base point)");
    s->add_option("--n", n_, "radius")->required();
    s->add_option("--p", p_text_, "retention probability (default 1/2)");
    add_seed(s);
    s->add_option("--sample", sample_index_, "sample index");

    s = sub("density-check", "exact density of closing subsets over m disjoint windows", [this] { cmd_density(); });
    add_gen(s);
    s->add_option("--pattern", pattern_, "pattern JSON (default: single element)");
    s->add_option("--m", m_, "number of disjoint windows")->required();

    s = sub("tree-fixpoint", "least fixed point of q + p x^k and the infinite path probability", [this] { cmd_fixpoint(); });
    s->add_option("--k", k_, "branching")->required();
    s->add_option("--p", p_text_, "retention probability")->required();
    s->add_option("--tol", tol_, "tolerance (default 1e-9)");

    s = sub("tree-mc", "Monte Carlo descending path probability", [this] { cmd_tree_mc(); });
    s->add_option("--k", k_, "branching")->required();
    s->add_option("--p", p_text_, "retention probability")->required();
    s->add_option("--depth", depth_, "path length in edges")->required();
    s->add_option("--samples", samples_, "samples");
    add_seed(s);

    s = sub("forest-count", "labeled and unlabeled unary forest counts", [this] { cmd_forest(); });
    s->add_option("--n-max", n_max_, "largest size")->required();
  }

  void cmd_ball() {
    auto g = generator();
    const Json j = to_json(ball_of(*g, centers(*g), n_));
    if (out_path_.empty()) {
      detail::emit(out_, j);
      return;
    }
    std::ofstream f(out_path_);
    if (!f) throw ArgumentError("cannot write '" + out_path_ + "'");
    f << j.dump(2) << "\n";
  }

  void cmd_reps() {
    auto g = generator();
    Json reps = Json::array();
    for (const auto& r : ball_representatives(*g, n_)) reps.push_back(to_json(r));
    Json j;
    j["generator"] = g->name();
    j["radius"] = n_;
    j["count"] = reps.size();
    j["representatives"] = std::move(reps);
    detail::emit(out_, j);
  }

  void cmd_eval() {
    const Structure s = structure_input();
    const Formula f = formula();
    validate(f, s.vocabulary());
    Assignment a;
    for (const auto& item : assigns_) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ArgumentError("assignment '" + item + "' must look like var=element");
      auto v = zol::detail::parse_canonical_int(item.substr(eq + 1));
      if (!v || *v < 0) throw ArgumentError("assignment '" + item + "' needs a nonnegative element index");
      a[item.substr(0, eq)] = static_cast<Element>(*v);
    }
    Json j;
    j["value"] = eval(s, f, a);
    j["quantifier_rank"] = quantifier_rank(f);
    detail::emit(out_, j);
  }

  void cmd_fraction() {
    const Structure s = structure_input();
    const Formula f = formula();
    FractionResult r;
    if (mode_ == "exact") {
      r = fraction_exact(s, f, threads_);
    } else {
      if (!seed_) throw ArgumentError("--seed is required for --mode mc");
      r = fraction_mc(s, f, samples_, *seed_, threads_);
    }
    Json j = detail::fraction_json(r);
    j["size"] = s.size();
    detail::emit(out_, j);
  }

  void cmd_trajectory() {
    auto g = generator();
    const Formula f = formula();
    TrajectoryConfig cfg;
    cfg.mode = mode_ == "exact" ? FractionMode::Exact : FractionMode::MonteCarlo;
    cfg.samples = samples_;
    cfg.seed = seed_;
    cfg.workers = threads_;
    if (cfg.mode == FractionMode::MonteCarlo && !seed_) throw ArgumentError("--seed is required for --mode mc");
    std::vector<Trajectory> runs;
    for (const auto& c : centers(*g)) runs.push_back(trajectory(*g, c, f, n_max_, cfg));
    if (format_ == "json") {
      Json all = Json::array();
      for (const auto& t : runs) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
          Json r = detail::fraction_json(row.result);
          r["n"] = row.n;
          rows.push_back(std::move(r));
        }
        all.push_back({{"center", t.center}, {"verdict", to_string(t.verdict)}, {"rows", std::move(rows)}});
      }
      detail::emit(out_, all);
      return;
    }
    // One block per center; lines starting with '#' carry the center and
    // the trend verdict.
    out_ << "n,total,satisfied,fraction,halfwidth,mode\n";
    for (const auto& t : runs) {
      if (runs.size() > 1) out_ << "# center " << t.center << "\n";
      for (const auto& row : t.rows) {
        const auto& r = row.result;
        out_ << row.n << "," << r.total << "," << r.satisfied << "," << detail::csv_double(r.value()) << ","
             << detail::csv_double(r.halfwidth) << "," << to_string(r.mode) << "\n";
      }
      out_ << "# verdict " << to_string(t.verdict) << "\n";
    }
  }

  void cmd_ef() {
    const Structure a = load_structure(a_path_);
    const Structure b = load_structure(b_path_);
    Json j;
    j["equivalent"] = ef_equivalent(a, b, n_);
    j["rounds"] = n_;
    detail::emit(out_, j);
  }

  void cmd_strategy() {
    auto x = generator();
    auto x2 = gen2_.empty() ? generator() : make_generator(gen2_);
    StrategyState state;
    state.n = n_;
    Json moves = Json::array();
    for (const auto& text : picks_) {
      const auto [side, pick] = detail::parse_pick(text);
      StrategyMove mv = duplicator_strategy_move(*x, *x2, state, side, pick, radius_cap_);
      const StateCheck check = verify_strategy_state(*x, *x2, mv.state);
      Json m;
      m["round"] = mv.state.i;
      m["side"] = side == Side::A ? "a" : "b";
      m["pick"] = pick;
      m["response"] = mv.response;
      m["branch"] = to_string(mv.branch);
      m["radius"] = mv.state.radius();
      m["domain_size"] = mv.state.alpha.size();
      m["verified"] = check.ok;
      if (!check.ok) m["problem"] = check.detail;
      moves.push_back(std::move(m));
      state = std::move(mv.state);
    }
    Json pairs = Json::array();
    for (const auto& [a, b] : state.picks) pairs.push_back({a, b});
    Json j;
    j["generator"] = x->name();
    j["generator2"] = x2->name();
    j["rounds"] = n_;
    j["moves"] = std::move(moves);
    j["final_pairs"] = std::move(pairs);
    detail::emit(out_, j);
  }

  void cmd_embed() {
    const Structure pattern = load_structure(pattern_);
    Json j;
    if (!host_.empty()) {
      if (!gen_.empty()) throw ArgumentError("give either --host or --gen, not both");
      const Structure host = load_structure(host_);
      std::optional<Embedding> e;
      if (closed_) {
        e = has_closed_copy(host, pattern);
      } else {
        e = first_embedding(pattern, host);
      }
      j["embeds"] = e.has_value();
      j["embedding"] = e ? Json(e->image) : Json(nullptr);
    } else {
      if (gen_.empty()) throw ArgumentError("give --gen G or --host FILE");
      if (closed_) throw ArgumentError("--closed applies to --host only");
      auto g = generator();
      j["generator"] = g->name();
      j["embeds"] = embeds_in_ambient(*g, pattern);
    }
    detail::emit(out_, j);
  }

  void cmd_sigma() {
    auto g = generator();
    Json axioms = Json::array();
    for (const auto& ax : sigma_axioms(*g, max_size_)) {
      axioms.push_back({{"polarity", to_string(ax.polarity)}, {"pattern", to_json(ax.pattern)}});
    }
    Json j;
    j["generator"] = g->name();
    j["max_size"] = max_size_;
    j["count"] = axioms.size();
    j["axioms"] = std::move(axioms);
    detail::emit(out_, j);
  }

  void cmd_closed_copy() {
    auto g = generator();
    const Structure pattern = pattern_or_singleton(*g);
    const Rational p = parse_probability(p_text_);
    const CopyEstimate est = closed_copy_prob(*g, pattern, radius_, to_double(p), samples_, *seed_, threads_);
    Json j;
    j["generator"] = g->name();
    j["window_radius"] = est.window_radius;
    j["window_size"] = est.window_size;
    j["p"] = to_string(p);
    j["samples"] = est.samples;
    j["seed"] = *seed_;
    j["hits"] = est.hits;
    j["estimate"] = est.estimate;
    j["halfwidth"] = est.halfwidth;
    if (exact_) {
      const Rational ex = closed_copy_prob_exact(*g, pattern, radius_, p);
      j["exact"] = to_string(ex);
      j["exact_value"] = to_double(ex);
    }
    detail::emit(out_, j);
  }

  void cmd_percolate() {
    auto g = generator();
    const BallPatch patch = ball_of(*g, centers(*g), n_);
    const SubsetMask kept = sample_substructure(patch.structure, probability(), *seed_, sample_index_);
    Json ids = Json::array();
    for (Element e : kept.members()) ids.push_back(patch.vertices[e]);
    Json j;
    j["generator"] = g->name();
    j["ball_size"] = patch.structure.size();
    j["p"] = to_string(parse_probability(p_text_));
    j["seed"] = *seed_;
    j["sample"] = sample_index_;
    j["kept_count"] = ids.size();
    j["kept"] = std::move(ids);
    detail::emit(out_, j);
  }

  void cmd_density() {
    auto g = generator();
    const DensityReport rep = generic_density_check(*g, pattern_or_singleton(*g), m_);
    Json j;
    j["generator"] = g->name();
    j["k"] = rep.k;
    j["m"] = rep.m;
    j["f1"] = rep.f1;
    j["windows"] = rep.windows;
    j["closing_subsets"] = rep.closing_subsets;
    j["fraction"] = to_string(rep.fraction);
    j["fraction_value"] = to_double(rep.fraction);
    j["bound"] = to_string(rep.bound);
    j["bound_value"] = to_double(rep.bound);
    j["ok"] = rep.ok;
    detail::emit(out_, j);
  }

  void cmd_fixpoint() {
    const FixpointParams params(k_, probability());
    const FixpointResult r = least_fixed_point(params, tol_);
    Json j;
    j["lfp"] = r.lfp;
    j["infinite_path_prob"] = 1.0 - r.lfp;
    j["iterations"] = r.iterations;
    j["newton_steps"] = r.newton_steps;
    detail::emit(out_, j);
  }

  void cmd_tree_mc() {
    const FixpointParams params(k_, probability());
    const PathEstimate est = descending_path_mc(params, depth_, samples_, *seed_, threads_);
    Json j;
    j["k"] = k_;
    j["p"] = params.p;
    j["depth"] = depth_;
    j["samples"] = est.samples;
    j["seed"] = *seed_;
    j["hits"] = est.hits;
    j["estimate"] = est.estimate;
    j["halfwidth"] = est.halfwidth;
    j["recurrence"] = 1.0 - iterate_pn(params, depth_);
    detail::emit(out_, j);
  }

  void cmd_forest() {
    out_ << "n,a_n,b_n,lower_b,upper_b,ok\n";
    for (const auto& c : count_forests(n_max_)) {
      const ForestBounds fb = forest_bounds(c);
      out_ << c.n << "," << c.a << "," << c.b << "," << fb.lower_b << "," << fb.upper_b << ","
           << (fb.a_ok && fb.b_ok ? "true" : "false") << "\n";
    }
  }
};

// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out);
  CLI::App& app = runner.app();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  }
  try {
    runner.dispatch();
    return 0;
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const EvalError& e) {
    err << "eval error: " << e.what() << "\n";
  } catch (const GuardError& e) {
    err << "guard error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const CapError& e) {
    err << "cap error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace zol::cli
