#include "uc/cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "uc/cli/json_io.hpp"
#include "uc/cli/suites.hpp"
#include "uc/error.hpp"

namespace uc::cli {

namespace {

namespace fs = std::filesystem;

// One file per residue count under the cache directory.
class FileCache : public CountCache {
 public:
  explicit FileCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::optional<Int> get(const std::string& key) override {
    std::ifstream in(path(key));
    std::string text;
    if (!(in >> text)) return std::nullopt;
    return Int(text);
  }
  void put(const std::string& key, const Int& count) override {
    std::ofstream out(path(key), std::ios::trunc);
    out << count.get_str() << '\n';
  }

 private:
  fs::path path(const std::string& key) const {
    std::string name;
    for (char c : key) {
      switch (c) {
        case '-': name += 'm'; break;
        case ',': name += 'c'; break;
        case ';': name += 's'; break;
        case ':': name += 'x'; break;
        default: name += c;
      }
    }
    return dir_ / (name + ".count");
  }
  fs::path dir_;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnsupportedLocale:
    case ErrorCode::NotInert:
    case ErrorCode::EvenPrime:
    case ErrorCode::BadPrime:
    case ErrorCode::NotRamifiedAt2:
      return kExitLocale;
    default:
      return kExitInvalid;
  }
}

struct Args {
  std::optional<long> delta;
  std::string cache;
  std::string strategy = "orbit";
  unsigned threads = 1;
  std::string s, t, l, target;
  long p = 0;
  int k = 1, a = 0, b = 0, n = 0, cap = 64;
  std::optional<int> deg;
  std::vector<long> aux;
  std::string suite;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args args;
  std::function<Json()> action;
  int verify_exit = kExitOk;

  CLI::App app{"Exact finite-place invariants of hermitian forms over imaginary quadratic fields", "uc"};
  app.require_subcommand(1);

  auto field_ctx = [&] {
    if (!args.delta) throw Error(ErrorCode::InvalidArgument, "--delta is required");
    return FieldContext::make(*args.delta);
  };
  std::unique_ptr<FileCache> cache;
  auto count_opts = [&] {
    CountOptions opt;
    if (args.strategy == "enumerate") opt.strategy = CountStrategy::enumerate;
    else if (args.strategy != "orbit") throw Error(ErrorCode::InvalidArgument, "strategy must be orbit or enumerate");
    opt.threads = std::max(1u, args.threads);
    if (const char* env = std::getenv("UC_NODE_BUDGET")) {
      try {
        opt.node_budget = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "UC_NODE_BUDGET must be a positive integer");
      }
    }
    if (!args.cache.empty()) {
      if (!cache) cache = std::make_unique<FileCache>(args.cache);
      opt.cache = cache.get();
    }
    return opt;
  };
  auto herm = [&](const std::string& text, const char* flag) {
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
    return parse_hermitian(text, field_ctx());
  };
  auto lattice_arg = [&] {
    if (!args.l.empty()) return parse_lattice(args.l, field_ctx());
    return standard_lattice(field_ctx(), herm(args.t, "--T or --L"));
  };

  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, std::function<Json()> fn) {
    CLI::App* c = group->add_subcommand(name, help);
    c->add_option("--delta", args.delta, "Fundamental discriminant of k (negative)");
    c->callback([&action, fn] { action = fn; });
    return c;
  };
  auto with_density = [&](CLI::App* c) {
    c->add_option("--strategy", args.strategy, "orbit or enumerate");
    c->add_option("--threads", args.threads, "Threads for the enumerate strategy");
    c->add_option("--cache", args.cache, "Directory memoizing residue counts");
  };

  // field
  CLI::App* field = app.add_subcommand("field", "Quadratic field data")->require_subcommand(1);
  leaf(field, "info", "Discriminant, ramified primes, class number, units", [&]() -> Json {
    auto ctx = field_ctx();
    return {{"delta", ctx.delta()}, {"delta_primes", ctx.delta_primes()}, {"δ", ctx.ramified_count()},
            {"h", ctx.class_number()}, {"w", ctx.unit_count()}};
  });

  // herm
  CLI::App* hg = app.add_subcommand("herm", "Hermitian matrices")->require_subcommand(1);
  leaf(hg, "invariants", "Space invariants of T", [&]() -> Json {
    return to_json(space_invariants(field_ctx(), herm(args.t, "--T")));
  })->add_option("--T", args.t, "Hermitian matrix (JSON)");
  leaf(hg, "diff", "Diff(T, V) and Diff_0(T)", [&]() -> Json {
    return to_json(diff_sets(field_ctx(), herm(args.t, "--T")));
  })->add_option("--T", args.t, "Hermitian matrix (JSON)");
  {
    auto* c = leaf(hg, "jordan", "Jordan exponents at an odd inert prime", [&]() -> Json {
      auto j = local_jordan_inert(field_ctx(), herm(args.t, "--T"), args.p);
      return {{"p", j.p}, {"exponents", j.exponents}};
    });
    c->add_option("--T", args.t, "Hermitian matrix (JSON)");
    c->add_option("--p", args.p, "Prime")->required();
  }
  {
    auto* c = leaf(hg, "nondeg", "Nondegeneracy at p", [&]() -> Json {
      auto r = nondegeneracy_report(field_ctx(), herm(args.t, "--T"), args.p);
      Json j = {{"nondeg", r.nondeg}, {"r0", r.r0}, {"predicted_dim", r.predicted_dim}, {"exponents", r.exponents}};
      if (r.a) j["a"] = *r.a;
      if (r.b) j["b"] = *r.b;
      return j;
    });
    c->add_option("--T", args.t, "Hermitian matrix (JSON)");
    c->add_option("--p", args.p, "Prime")->required();
  }

  // lattice
  CLI::App* lg = app.add_subcommand("lattice", "Hermitian lattices")->require_subcommand(1);
  auto lattice_input = [&](CLI::App* c) {
    c->add_option("--L", args.l, "Lattice JSON {gram, zgens}");
    c->add_option("--T", args.t, "Gram matrix; the standard lattice O_k^n is used");
  };
  lattice_input(leaf(lg, "dual", "Dual lattice", [&]() -> Json { return to_json(dual_lattice(lattice_arg())); }));
  lattice_input(leaf(lg, "status", "Self-dual / nearly self-dual / other", [&]() -> Json {
    auto s = selfdual_status(lattice_arg());
    Json shape = Json::array();
    for (const auto& e : s.quotient_shape) shape.push_back(integer_json(e));
    Json j = {{"kind", to_string(s.kind)}, {"quotient_shape", shape}};
    if (s.kind == SelfDualStatus::Kind::nearly) j["p"] = s.p;
    return j;
  }));
  {
    auto* c = leaf(lg, "genus", "Genus by Kneser neighbours", [&]() -> Json {
      auto l = lattice_arg();
      return to_json(genus_enumerate(l, args.aux, args.cap));
    });
    lattice_input(c);
    c->add_option("--aux", args.aux, "Auxiliary split primes");
    c->add_option("--cap", args.cap, "Maximum number of classes");
  }
  {
    auto* c = leaf(lg, "repcount", "Representation count of a target form", [&]() -> Json {
      auto l = lattice_arg();
      auto target = herm(args.target, "--target");
      return {{"count", integer_json(rep_count(target, l))}, {"aut_order", aut_group(l).order}};
    });
    lattice_input(c);
    c->add_option("--target", args.target, "Target hermitian matrix (JSON)");
  }
  {
    auto* c = leaf(lg, "nearly", "Nearly self-dual lattice in V_T", [&]() -> Json {
      auto l = nearly_selfdual_in(field_ctx(), herm(args.t, "--T"), args.p);
      return {{"lattice", to_json(l)}, {"status", to_string(selfdual_status(l).kind)}};
    });
    c->add_option("--T", args.t, "Hermitian matrix (JSON)");
    c->add_option("--p", args.p, "Odd inert prime")->required();
  }

  // density
  CLI::App* dg = app.add_subcommand("density", "Local representation densities")->require_subcommand(1);
  auto st = [&](CLI::App* c) {
    c->add_option("--S", args.s, "Hermitian matrix S (JSON)");
    c->add_option("--T", args.t, "Hermitian matrix T (JSON)");
    c->add_option("--p", args.p, "Odd inert prime")->required();
    with_density(c);
  };
  {
    auto* c = leaf(dg, "brute", "Residue count at level k", [&]() -> Json {
      auto ctx = field_ctx();
      auto r = residue_count(ctx, herm(args.s, "--S"), herm(args.t, "--T"), args.p, args.k, count_opts());
      return {{"count", integer_json(r.count)}, {"scaled", rational_json(r.scaled)}, {"k", r.k}, {"p", r.p}};
    });
    st(c);
    c->add_option("--k", args.k, "Level")->required();
  }
  st(leaf(dg, "alpha", "Stabilized density", [&]() -> Json {
    return to_json(alpha(field_ctx(), herm(args.s, "--S"), herm(args.t, "--T"), args.p, count_opts()));
  }));
  {
    auto* c = leaf(dg, "poly", "Density polynomial in X = (-p)^{-r}", [&]() -> Json {
      auto ctx = field_ctx();
      auto s = herm(args.s, "--S"), t = herm(args.t, "--T");
      if (args.deg) return to_json(density_poly(ctx, s, t, args.p, *args.deg, count_opts()));
      // raise the degree until the held-out point agrees
      const int n = t.size();
      const int top = 2 * (n + valuation(det_class(ctx, t), args.p)) + 2;
      for (int deg = n;; ++deg) {
        try {
          return to_json(density_poly(ctx, s, t, args.p, deg, count_opts()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::FitMismatch || deg >= top) throw;
        }
      }
    });
    st(c);
    c->add_option("--deg", args.deg, "Polynomial degree (default: smallest that fits)");
  }
  st(leaf(dg, "prime", "Central derivative alpha'", [&]() -> Json {
    auto v = alpha_prime(field_ctx(), herm(args.s, "--S"), herm(args.t, "--T"), args.p, count_opts());
    return {{"alpha_prime", rational_json(v)}, {"times", Json::array({"log_p"})}};
  }));
  {
    auto* c = dg->add_subcommand("mu", "The half-sum mu(a, b, p)");
    c->add_option("--a", args.a)->required();
    c->add_option("--b", args.b)->required();
    c->add_option("--p", args.p)->required();
    c->callback([&] { action = [&]() -> Json { return {{"mu", rational_json(mu(args.a, args.b, args.p))}}; }; });
  }

  // coeff
  CLI::App* cg = app.add_subcommand("coeff", "Whittaker values and Fourier coefficients")->require_subcommand(1);
  {
    auto* c = leaf(cg, "whittaker0", "Local Whittaker value at the centre", [&]() -> Json {
      return to_json(whittaker0(field_ctx(), herm(args.t, "--T"), herm(args.s, "--S"), args.p, count_opts()));
    });
    st(c);
  }
  {
    auto* c = leaf(cg, "prime", "Derivative of the local Whittaker function", [&]() -> Json {
      return to_json(whittaker_prime(field_ctx(), herm(args.t, "--T"), args.p));
    });
    c->add_option("--T", args.t, "Hermitian matrix (JSON)");
    c->add_option("--p", args.p, "Odd inert prime")->required();
  }
  leaf(cg, "report", "Fourier coefficient report", [&]() -> Json {
    return to_json(coefficient_report(field_ctx(), herm(args.t, "--T")));
  })->add_option("--T", args.t, "Hermitian matrix (JSON)");
  {
    auto* c = cg->add_subcommand("volratio", "Volume ratio of the nearly self-dual stabilizer");
    c->add_option("--n", args.n)->required();
    c->add_option("--p", args.p)->required();
    c->callback([&] { action = [&]() -> Json { return {{"volume_ratio", rational_json(volume_ratio(args.n, args.p))}}; }; });
  }

  // verify
  {
    auto* c = app.add_subcommand("verify", "Run a verification suite");
    c->add_option("suite", args.suite, "field, densities, derivative, lattice, maintheorem or all")->required();
    with_density(c);
    c->callback([&] {
      action = [&]() -> Json {
        auto r = verify_suite(args.suite, count_opts());
        if (!r.all_pass) verify_exit = kExitVerify;
        return to_json(r);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    Json result = action();
    out << result.dump(2) << '\n';
    return verify_exit;
  } catch (const Error& e) {
    err << Json{{"error", std::string(error_name(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << Json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << '\n';
    return kExitInvalid;
  }
}

}  // namespace uc::cli
