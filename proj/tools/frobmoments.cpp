// Command-line front end: table building with cache, identity sweeps, census
// runs, distribution reports. Exit codes: 0 success, 1 identity failure
// (with a machine-readable JSON report line), 2 usage error.

#include <omp.h>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frob/census.hpp"
#include "frob/distribution.hpp"
#include "frob/field.hpp"
#include "frob/hurwitz.hpp"
#include "frob/moments.hpp"
#include "frob/numtheory.hpp"
#include "frob/qseries.hpp"

namespace {

using frob::HurwitzTable;
using frob::Rational;

struct RunConfig {
  std::string cache_dir;
  int threads = 0;
  int64_t hurwitz_budget = 8'000'000;
  int64_t exhaustive_budget = 400;
  int64_t twist_budget_r1 = 200'000;
  int64_t twist_budget_ext = 10'000;
  std::string out = "csv";
  double tol = 0.0;  // 0 disables tolerance annotations
};

struct Range {
  int64_t lo = 0;
  int64_t hi = 0;
  int64_t step = 1;
};

Range parse_range(const std::string& s) {
  Range r;
  char extra = 0;
  int n = std::sscanf(s.c_str(), "%" SCNd64 ":%" SCNd64 ":%" SCNd64 "%c", &r.lo, &r.hi, &r.step,
                      &extra);
  if (n == 3) return r;
  n = std::sscanf(s.c_str(), "%" SCNd64 ":%" SCNd64 "%c", &r.lo, &r.hi, &extra);
  if (n == 2) {
    r.step = 1;
    return r;
  }
  throw CLI::ValidationError("range", "expected a:b or a:b:step, got '" + s + "'");
}

struct Triple {
  int64_t lo = 0;
  int64_t mid = 0;
  int64_t hi = 0;
};

Triple parse_triple(const std::string& s) {
  Triple t;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%" SCNd64 ":%" SCNd64 ":%" SCNd64 "%c", &t.lo, &t.mid, &t.hi,
                  &extra) == 3) {
    return t;
  }
  throw CLI::ValidationError("p-range", "expected lo:mid:hi, got '" + s + "'");
}

std::string fmt_decimal(double v, int sig = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

// Build (or load from cache) a table covering n_max.
HurwitzTable acquire_table(int64_t n_max, const RunConfig& cfg) {
  if (n_max > cfg.hurwitz_budget) {
    throw std::invalid_argument("required table width " + std::to_string(n_max) +
                                " exceeds --budget-hurwitz " + std::to_string(cfg.hurwitz_budget));
  }
  if (cfg.cache_dir.empty()) return frob::build_table(n_max);
  std::filesystem::path path =
      std::filesystem::path(cfg.cache_dir) / ("hurwitz-" + std::to_string(n_max) + ".bin");
  if (std::filesystem::exists(path)) {
    HurwitzTable t = frob::load_table(path.string());
    if (t.n_max == n_max) return t;
  }
  HurwitzTable t = frob::build_table(n_max);
  std::filesystem::create_directories(cfg.cache_dir);
  frob::save_table(t, path.string());
  return t;
}

int fail_identity(const nlohmann::json& report) {
  std::cout << report.dump() << "\n";
  return 1;
}

int cmd_hurwitz(const RunConfig& cfg, int64_t n_max) {
  if (n_max > cfg.hurwitz_budget) {
    throw std::invalid_argument("n_max exceeds --budget-hurwitz");
  }
  HurwitzTable t = frob::build_table(n_max);
  std::string dir = cfg.cache_dir.empty() ? "." : cfg.cache_dir;
  std::filesystem::create_directories(dir);
  std::filesystem::path path =
      std::filesystem::path(dir) / ("hurwitz-" + std::to_string(n_max) + ".bin");
  frob::save_table(t, path.string());
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, frob::table_checksum(t));
  std::cout << "wrote " << path.string() << " n_max=" << n_max << " checksum=" << hex << "\n";
  return 0;
}

int cmd_moments(const RunConfig& cfg, int nu, int64_t m, int64_t M, const Range& range,
                int64_t coprime_to) {
  HurwitzTable table = acquire_table(4 * range.hi, cfg);
  std::cout << "n,value_num,value_den,normalized\n";
  for (int64_t n = range.lo; n <= range.hi; n += range.step) {
    frob::MomentReport rep = frob::moment_report(nu, m, M, n, table, coprime_to);
    auto norm = rep.normalized(table);
    std::cout << n << "," << rep.value.num().get_str() << "," << rep.value.den().get_str() << ","
              << (norm ? fmt_decimal(*norm) : "nan") << "\n";
  }
  return 0;
}

int cmd_identity_kronecker(const RunConfig& cfg, const Range& range) {
  HurwitzTable table = acquire_table(4 * range.hi, cfg);
  int64_t checks = 0;
  for (int64_t n = std::max<int64_t>(1, range.lo); n <= range.hi; n += range.step) {
    auto [lhs, rhs] = frob::kronecker_hurwitz_check(n, table);
    if (lhs != rhs) {
      return fail_identity({{"identity", "kronecker"},
                            {"n", n},
                            {"lhs", lhs.str()},
                            {"rhs", rhs.str()}});
    }
    ++checks;
  }
  std::cout << "identity=kronecker checks=" << checks << " status=ok\n";
  return 0;
}

int cmd_identity_hgtilde(const RunConfig& cfg, int k, std::optional<int64_t> m, int64_t M,
                         const Range& range) {
  HurwitzTable table = acquire_table(4 * range.hi, cfg);
  std::vector<int64_t> ms;
  if (m) {
    ms.push_back(*m);
  } else {
    for (int64_t i = 0; i < M; ++i) ms.push_back(i);
  }
  int64_t checks = 0;
  for (int64_t mm : ms) {
    for (int64_t n = std::max<int64_t>(1, range.lo); n <= range.hi; n += range.step) {
      auto [lhs, rhs] = frob::hgtilde_check(k, mm, M, n, table);
      if (lhs != rhs) {
        return fail_identity({{"identity", "hgtilde"},
                              {"k", k},
                              {"m", mm},
                              {"M", M},
                              {"n", n},
                              {"lhs", lhs.str()},
                              {"rhs", rhs.str()}});
      }
      ++checks;
    }
  }
  std::cout << "identity=hgtilde k=" << k << " M=" << M << " checks=" << checks << " status=ok\n";
  return 0;
}

int cmd_identity_osaka(int k_max, int64_t t_max) {
  int64_t checks = 0;
  for (int k = 0; k <= k_max; ++k) {
    for (int64_t t = 2; t <= t_max; ++t) {
      for (int64_t s = 1; s < t; ++s) {
        auto [lhs, rhs] = frob::osaka_check(k, t, s);
        if (lhs != rhs) {
          return fail_identity({{"identity", "osaka"},
                                {"k", k},
                                {"t", t},
                                {"s", s},
                                {"lhs", lhs.str()},
                                {"rhs", rhs.str()}});
        }
        ++checks;
      }
    }
  }
  std::cout << "identity=osaka k_max=" << k_max << " t_max=" << t_max << " checks=" << checks
            << " status=ok\n";
  return 0;
}

int cmd_identity_deuring(const RunConfig& cfg, int64_t p, int r, std::optional<int64_t> m,
                         int64_t M, int nu_min, int nu_max) {
  int64_t q = 1;
  for (int i = 0; i < r; ++i) q *= p;
  HurwitzTable table = acquire_table(4 * q, cfg);
  frob::PrimePowerField field = frob::field_build(p, r);
  frob::Census census = frob::census_twist(field, cfg.twist_budget_r1, cfg.twist_budget_ext);
  if (q <= cfg.exhaustive_budget) {
    frob::Census oracle = frob::census_exhaustive(field, cfg.exhaustive_budget);
    auto key = [](const frob::Census& c) {
      std::vector<std::tuple<int64_t, int64_t, int>> k;
      for (const frob::CurveClass& cl : c.classes) k.emplace_back(cl.j, cl.t, cl.omega);
      std::sort(k.begin(), k.end());
      return k;
    };
    if (key(oracle) != key(census)) {
      return fail_identity({{"identity", "deuring"},
                            {"p", p},
                            {"r", r},
                            {"error", "twist census disagrees with exhaustive oracle"}});
    }
  }
  std::vector<int64_t> ms;
  if (m) {
    ms.push_back(*m);
  } else {
    for (int64_t i = 0; i < M; ++i) ms.push_back(i);
  }
  bool ok = true;
  for (int nu = nu_min; nu <= nu_max; ++nu) {
    for (int64_t mm : ms) {
      frob::DeuringTriple d = frob::deuring_check(census, nu, mm, M, table);
      bool line_ok = d.two_s == d.h_flat + d.e;
      ok = ok && line_ok;
      std::cout << "p=" << p << " r=" << r << " nu=" << nu << " m=" << mm << " M=" << M
                << " two_s=" << d.two_s.str() << " h_flat=" << d.h_flat.str()
                << " e=" << d.e.str() << " status=" << (line_ok ? "ok" : "FAIL") << "\n";
      if (!line_ok) {
        return fail_identity({{"identity", "deuring"},
                              {"p", p},
                              {"r", r},
                              {"nu", nu},
                              {"m", mm},
                              {"M", M},
                              {"two_s", d.two_s.str()},
                              {"h_flat", d.h_flat.str()},
                              {"e", d.e.str()}});
      }
    }
  }
  return ok ? 0 : 1;
}

int cmd_census(const RunConfig& cfg, int64_t p, int r, const std::string& mode) {
  frob::PrimePowerField field = frob::field_build(p, r);
  frob::Census census = mode == "exhaustive"
                            ? frob::census_exhaustive(field, cfg.exhaustive_budget)
                            : frob::census_twist(field, cfg.twist_budget_r1, cfg.twist_budget_ext);
  if (cfg.out == "json") {
    std::cout << frob::census_json(census) << "\n";
  } else {
    std::cout << "j,a,b,t,omega\n";
    for (const frob::CurveClass& c : census.classes) {
      std::cout << field.elem_str(c.j) << "," << field.elem_str(c.a) << ","
                << field.elem_str(c.b) << "," << c.t << "," << c.omega << "\n";
    }
  }
  return 0;
}

int cmd_satotate(const RunConfig& cfg, int64_t p, int r, int64_t m, int64_t M, int nu_max) {
  frob::PrimePowerField field = frob::field_build(p, r);
  frob::Census census = frob::census_twist(field, cfg.twist_budget_r1, cfg.twist_budget_ext);
  std::cout << "nu,empirical,sato_tate,abs_error\n";
  for (int nu = 0; nu <= nu_max; ++nu) {
    double emp = frob::empirical_moment(census, nu, m, M);
    double model = frob::st_moment(nu).to_double();
    std::cout << nu << "," << fmt_decimal(emp) << "," << fmt_decimal(model) << ","
              << fmt_decimal(std::fabs(emp - model)) << "\n";
  }
  double d = frob::ks_discrepancy(census, m, M);
  std::cout << "discrepancy," << fmt_decimal(d);
  if (cfg.tol > 0.0) std::cout << "," << (d < cfg.tol ? "ok" : "high");
  std::cout << "\n";
  return 0;
}

int cmd_ratio_scan(const RunConfig& cfg, int64_t M, int64_t j, int64_t m, const Triple& pr) {
  HurwitzTable table = acquire_table(4 * pr.hi, cfg);
  frob::RatioScanResult res = frob::ratio_scan(M, j, m, pr.lo, pr.mid, pr.hi, table);
  std::cout << "p,ratio_num,ratio_den,ratio_decimal\n";
  for (const frob::RatioPoint& pt : res.points) {
    std::cout << pt.p << "," << pt.ratio.num().get_str() << "," << pt.ratio.den().get_str() << ","
              << fmt_decimal(pt.ratio.to_double()) << "\n";
  }
  std::cout << "batch_mean_lo," << fmt_decimal(res.mean_lo.to_double()) << "\n";
  std::cout << "batch_mean_hi," << fmt_decimal(res.mean_hi.to_double()) << "\n";
  std::cout << "batch_gap," << fmt_decimal(res.batch_gap);
  if (cfg.tol > 0.0) std::cout << "," << (res.batch_gap < cfg.tol ? "ok" : "high");
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz class-number moments, curve censuses, and Sato-Tate diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("FROBMOMENTS_CACHE_DIR")) cfg.cache_dir = env;
  app.add_option("--cache", cfg.cache_dir, "cache directory for Hurwitz tables");
  app.add_option("--threads", cfg.threads, "worker count (default: OpenMP default)");
  app.add_option("--budget-hurwitz", cfg.hurwitz_budget, "largest allowed table width");
  app.add_option("--budget-exhaustive", cfg.exhaustive_budget, "largest q for exhaustive census");
  app.add_option("--budget-twist", cfg.twist_budget_r1, "largest q for twist census at r = 1");
  app.add_option("--budget-twist-ext", cfg.twist_budget_ext, "largest q for twist census at r > 1");
  app.add_option("--out", cfg.out, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", cfg.tol, "tolerance used to annotate report lines");

  // hurwitz
  auto* hur = app.add_subcommand("hurwitz", "build a 12*H(n) table and write the cache file");
  hur->fallthrough();
  int64_t hur_max = 0;
  hur->add_option("--max,--n-max", hur_max, "table width n_max")->required();

  // moments
  auto* mom = app.add_subcommand("moments", "restricted Hurwitz moments H_{nu,m,M}(n) as CSV");
  mom->fallthrough();
  int mom_nu = 0;
  int64_t mom_m = 0, mom_M = 1, mom_coprime = 0;
  std::string mom_range;
  mom->add_option("--nu", mom_nu, "moment order")->required();
  mom->add_option("--m", mom_m, "progression residue");
  mom->add_option("--M", mom_M, "progression modulus");
  mom->add_option("--n-range", mom_range, "a:b[:step]")->required();
  mom->add_option("--coprime-to", mom_coprime, "omit terms with p | t");

  // identity
  auto* ident = app.add_subcommand("identity", "exact identity sweeps");
  ident->fallthrough();
  ident->require_subcommand(1);
  auto* kron = ident->add_subcommand("kronecker", "Kronecker-Hurwitz relation");
  kron->fallthrough();
  std::string kron_range = "1:2000";
  kron->add_option("--n-range", kron_range, "a:b[:step]");
  auto* hgt = ident->add_subcommand("hgtilde", "odd-moment recursion");
  hgt->fallthrough();
  int hgt_k = 0;
  int64_t hgt_M = 1;
  std::optional<int64_t> hgt_m;
  std::string hgt_range = "1:300";
  hgt->add_option("--k", hgt_k, "bracket order");
  hgt->add_option("--M", hgt_M, "progression modulus");
  hgt->add_option("--m", hgt_m, "progression residue (default: all residues)");
  hgt->add_option("--n-range", hgt_range, "a:b[:step]");
  auto* osa = ident->add_subcommand("osaka", "holomorphic-projection polynomial identity");
  osa->fallthrough();
  int osa_kmax = 5;
  int64_t osa_tmax = 40;
  osa->add_option("--k-max", osa_kmax, "largest bracket order");
  osa->add_option("--t-max", osa_tmax, "largest t in the (s, t) sweep");
  auto* deu = ident->add_subcommand("deuring", "census identity 2S = H-flat + E");
  deu->fallthrough();
  int64_t deu_p = 0, deu_M = 1;
  int deu_r = 1, deu_numax = 3;
  std::optional<int64_t> deu_m;
  std::optional<int> deu_nu;
  deu->add_option("--p", deu_p, "prime > 3")->required();
  deu->add_option("--r", deu_r, "field exponent");
  deu->add_option("--M", deu_M, "progression modulus");
  deu->add_option("--m", deu_m, "progression residue (default: all residues)");
  deu->add_option("--nu", deu_nu, "single moment order");
  deu->add_option("--nu-max", deu_numax, "largest moment order");

  // census
  auto* cen = app.add_subcommand("census", "weighted isomorphism-class census");
  cen->fallthrough();
  int64_t cen_p = 0;
  int cen_r = 1;
  std::string cen_mode = "twist";
  cen->add_option("--p", cen_p, "prime > 3")->required();
  cen->add_option("--r", cen_r, "field exponent");
  cen->add_option("--mode", cen_mode, "exhaustive | twist")
      ->check(CLI::IsMember({"exhaustive", "twist"}));

  // satotate
  auto* st = app.add_subcommand("satotate", "empirical vs Sato-Tate moments and KS discrepancy");
  st->fallthrough();
  int64_t st_p = 0, st_m = 0, st_M = 1;
  int st_r = 1, st_numax = 8;
  st->add_option("--p", st_p, "prime > 3")->required();
  st->add_option("--r", st_r, "field exponent");
  st->add_option("--m", st_m, "progression residue");
  st->add_option("--M", st_M, "progression modulus");
  st->add_option("--nu-max", st_numax, "largest moment order");

  // ratio-scan
  auto* rs = app.add_subcommand("ratio-scan", "S_{m,M}(p)/S_{1,1}(p) over p = j (mod 4M^2)");
  rs->fallthrough();
  int64_t rs_M = 1, rs_j = 1, rs_m = 0;
  std::string rs_range;
  rs->add_option("--M", rs_M, "progression modulus")->required();
  rs->add_option("--j", rs_j, "prime congruence class mod 4M^2")->required();
  rs->add_option("--m", rs_m, "progression residue");
  rs->add_option("--p-range", rs_range, "lo:mid:hi (batches [lo,mid) and [mid,hi])")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  try {
    if (*hur) return cmd_hurwitz(cfg, hur_max);
    if (*mom) return cmd_moments(cfg, mom_nu, mom_m, mom_M, parse_range(mom_range), mom_coprime);
    if (*kron) return cmd_identity_kronecker(cfg, parse_range(kron_range));
    if (*hgt) return cmd_identity_hgtilde(cfg, hgt_k, hgt_m, hgt_M, parse_range(hgt_range));
    if (*osa) return cmd_identity_osaka(osa_kmax, osa_tmax);
    if (*deu) {
      int lo = deu_nu ? *deu_nu : 0;
      int hi = deu_nu ? *deu_nu : deu_numax;
      return cmd_identity_deuring(cfg, deu_p, deu_r, deu_m, deu_M, lo, hi);
    }
    if (*cen) return cmd_census(cfg, cen_p, cen_r, cen_mode);
    if (*st) return cmd_satotate(cfg, st_p, st_r, st_m, st_M, st_numax);
    if (*rs) return cmd_ratio_scan(cfg, rs_M, rs_j, rs_m, parse_triple(rs_range));
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
