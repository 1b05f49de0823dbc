// Command-line surface: evaluate matrix elements, blocks, and characters to
// JSON/CSV, and run the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sp4rep/characters.hpp"
#include "sp4rep/checks.hpp"
#include "sp4rep/errors.hpp"
#include "sp4rep/fockbasis.hpp"
#include "sp4rep/matrix_elements.hpp"
#include "sp4rep/sp4.hpp"

using json = nlohmann::ordered_json;
using namespace sp4rep;

namespace {

struct CliConfig {
  double varsigma = 4;
  int spin_x2 = 0;
  int lmax = 14;
  double tol = 1e-8;
  double abel_t = 0.9;
  std::uint64_t mc_samples = 100000;
  std::uint64_t seed = 1;
  std::string element = "kak:seed=1,t=0.1";
  std::string format = "json";
};

json config_json(const CliConfig &c)
{
  return json{{"varsigma", c.varsigma}, {"spin_x2", c.spin_x2},   {"lmax", c.lmax},
              {"tol", c.tol},           {"abel_t", c.abel_t},     {"mc_samples", c.mc_samples},
              {"seed", c.seed},         {"element", c.element},   {"format", c.format}};
}

std::vector<double> parse_reals(const std::string &s)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(std::stod(item));
  return out;
}

std::map<std::string, std::string> parse_kv(const std::string &spec, char outer_sep)
{
  std::map<std::string, std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, outer_sep)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("malformed key=value entry: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

sp4::Sp4Element parse_element(const std::string &spec)
{
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError("element spec must be kak:..., diag:..., or explicit:...");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "kak") {
    auto kv = parse_kv(rest, ',');
    if (!kv.count("seed") || !kv.count("t"))
      throw ConfigError("kak spec needs seed=<n>,t=<real>");
    return sp4::random_element(std::stoull(kv["seed"]), real(std::stod(kv["t"])));
  }
  if (kind == "diag") {
    auto kv = parse_kv(rest, ';');
    if (!kv.count("mu") || !kv.count("nu"))
      throw ConfigError("diag spec needs mu=<re>,<im>;nu=<re>,<im>");
    const auto mu = parse_reals(kv["mu"]);
    const auto nu = parse_reals(kv["nu"]);
    if (mu.size() != 2 || nu.size() != 2)
      throw ConfigError("diag spec needs mu=<re>,<im>;nu=<re>,<im>");
    return sp4::make_diagonal(cplx(mu[0], mu[1]), cplx(nu[0], nu[1]));
  }
  if (kind == "explicit") {
    auto kv = parse_kv(rest, ';');
    if (!kv.count("a") || !kv.count("b"))
      throw ConfigError("explicit spec needs a=<8 reals>;b=<8 reals> (re,im interleaved)");
    const auto av = parse_reals(kv["a"]);
    const auto bv = parse_reals(kv["b"]);
    if (av.size() != 8 || bv.size() != 8)
      throw ConfigError("explicit spec needs 8 comma-separated reals per block");
    auto quat = [](const std::vector<double> &v) {
      return CQuat(cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]), cplx(v[6], v[7]));
    };
    return {quat(av), quat(bv)};
  }
  throw ConfigError("unknown element kind: " + kind);
}

characters::EigenPair parse_eigenpair(const std::string &spec)
{
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.substr(0, colon) != "diag")
    throw ConfigError("character needs a diag:mu=...;nu=... element spec");
  auto kv = parse_kv(spec.substr(colon + 1), ';');
  const auto mu = parse_reals(kv.at("mu"));
  const auto nu = parse_reals(kv.at("nu"));
  return {cplx(mu[0], mu[1]), cplx(nu[0], nu[1])};
}

void load_config_file(const std::string &path, CliConfig &cfg)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("malformed config line: " + line);
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "varsigma")
      cfg.varsigma = std::stod(value);
    else if (key == "spin_x2")
      cfg.spin_x2 = std::stoi(value);
    else if (key == "lmax")
      cfg.lmax = std::stoi(value);
    else if (key == "tol")
      cfg.tol = std::stod(value);
    else if (key == "abel_t")
      cfg.abel_t = std::stod(value);
    else if (key == "mc_samples")
      cfg.mc_samples = std::stoull(value);
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "element")
      cfg.element = value;
    else if (key == "format")
      cfg.format = value;
    else
      throw ConfigError("unknown config key: " + key);
  }
}

fockbasis::RepLabel rep_of(const CliConfig &cfg)
{
  fockbasis::RepLabel rep{real(cfg.varsigma), HalfInt(cfg.spin_x2)};
  rep.validate();
  return rep;
}

fockbasis::Truncation trunc_of(const CliConfig &cfg)
{
  fockbasis::Truncation t;
  t.l_max = cfg.lmax;
  t.series_tol = real(cfg.tol);
  t.abel_t = real(cfg.abel_t);
  t.mc_samples = cfg.mc_samples;
  return t;
}

json index_json(const fockbasis::SpinIndex &idx, int spin_x2)
{
  json j{{"l", idx.l}, {"k", idx.k}};
  if (spin_x2 != 0) {
    j["J_x2"] = idx.J.twice;
    j["M_x2"] = idx.M.twice;
  } else {
    j["m"] = idx.M.as_int();
  }
  return j;
}

fockbasis::SpinIndex parse_index(const std::string &s, int spin_x2)
{
  const auto v = parse_reals(s);
  if (spin_x2 == 0) {
    if (v.size() != 3)
      throw ConfigError("scalar index is l,k,m");
    fockbasis::ScalarIndex idx{int(v[0]), int(v[1]), int(v[2])};
    if (!idx.valid())
      throw ConfigError("index violates 0 <= k <= l/2, |m| <= l-2k");
    return {idx.l, idx.k, HalfInt(2 * (idx.l - 2 * idx.k)), HalfInt(2 * idx.m)};
  }
  if (v.size() != 4)
    throw ConfigError("spin index is l,k,J_x2,M_x2");
  fockbasis::SpinIndex idx{int(v[0]), int(v[1]), HalfInt(int(v[2])), HalfInt(int(v[3]))};
  if (!idx.valid(HalfInt(spin_x2)))
    throw ConfigError("index violates the (l,k,J,M) constraints");
  return idx;
}

int run_element(const CliConfig &cfg, const std::string &in_s, const std::string &out_s)
{
  const auto rep = rep_of(cfg);
  const auto in = parse_index(in_s, cfg.spin_x2);
  const auto out = parse_index(out_s, cfg.spin_x2);
  matrix_elements::ElementEngine eng(rep, parse_element(cfg.element), trunc_of(cfg));
  const auto v = eng.spin_element(in, out);
  if (cfg.format == "csv") {
    std::printf("varsigma,spin_x2,in_l,in_k,in_J_x2,in_M_x2,out_l,out_k,out_J_x2,out_M_x2,"
                "value_re,value_im,tail_estimate,l_max_used,route\n");
    std::printf("%.17g,%d,%d,%d,%d,%d,%d,%d,%d,%d,%.17g,%.17g,%.17g,%d,%s\n", cfg.varsigma,
                cfg.spin_x2, in.l, in.k, in.J.twice, in.M.twice, out.l, out.k, out.J.twice,
                out.M.twice, double(v.value.real()), double(v.value.imag()),
                double(v.tail_estimate), cfg.lmax, v.b0_route ? "b0" : "series");
  } else {
    json rec{{"cmd", "element"},
             {"config", config_json(cfg)},
             {"in", index_json(in, cfg.spin_x2)},
             {"out", index_json(out, cfg.spin_x2)},
             {"value", {{"re", double(v.value.real())}, {"im", double(v.value.imag())}}},
             {"tail_estimate", double(v.tail_estimate)},
             {"l_max_used", cfg.lmax},
             {"route", v.b0_route ? "b0" : "series"}};
    std::cout << rec.dump() << "\n";
  }
  return 0;
}

int run_block(const CliConfig &cfg, int l_in, int l_out)
{
  const auto rep = rep_of(cfg);
  matrix_elements::ElementEngine eng(rep, parse_element(cfg.element), trunc_of(cfg));
  const auto ins = fockbasis::enumerate_spin(rep.s, l_in);
  const auto outs = fockbasis::enumerate_spin(rep.s, l_out);
  const MatX block = rep.s.twice == 0 ? eng.scalar_block(l_in, l_out) : eng.spin_block(l_in, l_out);
  if (cfg.format == "csv") {
    std::printf("in_l,in_k,in_J_x2,in_M_x2,out_l,out_k,out_J_x2,out_M_x2,value_re,value_im\n");
    for (size_t c = 0; c < ins.size(); ++c)
      for (size_t r = 0; r < outs.size(); ++r)
        std::printf("%d,%d,%d,%d,%d,%d,%d,%d,%.17g,%.17g\n", ins[c].l, ins[c].k, ins[c].J.twice,
                    ins[c].M.twice, outs[r].l, outs[r].k, outs[r].J.twice, outs[r].M.twice,
                    double(block(r, c).real()), double(block(r, c).imag()));
  } else {
    for (size_t c = 0; c < ins.size(); ++c)
      for (size_t r = 0; r < outs.size(); ++r) {
        json rec{{"cmd", "block"},
                 {"config", config_json(cfg)},
                 {"in", index_json(ins[c], cfg.spin_x2)},
                 {"out", index_json(outs[r], cfg.spin_x2)},
                 {"value",
                  {{"re", double(block(r, c).real())}, {"im", double(block(r, c).imag())}}},
                 {"route", eng.b0_route() ? "b0" : "series"}};
        std::cout << rec.dump() << "\n";
      }
  }
  return 0;
}

int run_character(const CliConfig &cfg)
{
  characters::CharacterRequest req;
  req.rep = rep_of(cfg);
  req.eig = parse_eigenpair(cfg.element);
  req.trunc = trunc_of(cfg);
  const auto rpt = characters::character(req);
  if (cfg.format == "csv") {
    std::printf("L,partial_re,partial_im\n");
    for (size_t l = 0; l < rpt.partial_sums.size(); ++l)
      std::printf("%zu,%.17g,%.17g\n", l, double(rpt.partial_sums[l].real()),
                  double(rpt.partial_sums[l].imag()));
  } else {
    json sums = json::array();
    for (size_t l = 0; l < rpt.partial_sums.size(); ++l)
      sums.push_back(json{{"L", l},
                          {"re", double(rpt.partial_sums[l].real())},
                          {"im", double(rpt.partial_sums[l].imag())}});
    json rec{{"cmd", "character"},
             {"config", config_json(cfg)},
             {"partial_sums", sums},
             {"verdict", characters::to_string(rpt.verdict)},
             {"last_delta", double(rpt.last_delta)}};
    std::cout << rec.dump() << "\n";
  }
  return rpt.verdict == characters::Verdict::diverging ? 3 : 0;
}

int run_verify(const CliConfig &cfg, const std::string &suite)
{
  std::vector<checks::SuiteResult> results;
  if (suite == "all") {
    results = checks::run_all(cfg.seed);
  } else {
    results.push_back(checks::run_suite(suite, cfg.seed));
  }
  bool all_ok = true;
  for (const auto &sr : results) {
    for (const auto &c : sr.checks) {
      json rec{{"cmd", "verify"},        {"suite", sr.suite},
               {"check", c.name},        {"passed", c.passed},
               {"residual", c.residual}, {"threshold", c.threshold}};
      std::cout << rec.dump() << "\n";
      all_ok = all_ok && c.passed;
    }
    json summary{{"cmd", "verify"}, {"suite", sr.suite}, {"summary", sr.passed() ? "pass" : "FAIL"}};
    std::cout << summary.dump() << "\n";
    // wall-clock timing goes to stderr so stdout stays bitwise deterministic
    std::cerr << "# suite " << sr.suite << " took " << sr.seconds << " s\n";
  }
  return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Discrete-series Sp(4,R) matrix elements and characters"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--varsigma", cfg.varsigma, "representation parameter varsigma");
  app.add_option("--spin-x2", cfg.spin_x2, "twice the spin s");
  app.add_option("--lmax", cfg.lmax, "series truncation degree");
  app.add_option("--tol", cfg.tol, "series tolerance");
  app.add_option("--abel-t", cfg.abel_t, "Abel regularization factor in (0,1]");
  app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--element", cfg.element, "group element: kak:seed=..,t=.. | diag:mu=..;nu=.. | explicit:a=..;b=..");
  app.add_option("--format", cfg.format, "json or csv");

  std::string in_s = "0,0,0", out_s = "0,0,0";
  auto *el = app.add_subcommand("element", "one matrix element");
  el->add_option("--in", in_s, "input index l,k,m or l,k,J_x2,M_x2");
  el->add_option("--out", out_s, "output index");

  int l_in = 0, l_out = 0;
  auto *bl = app.add_subcommand("block", "dense degree block");
  bl->add_option("--l-in", l_in, "input degree");
  bl->add_option("--l-out", l_out, "output degree");

  app.add_subcommand("character", "Abel-regularized character partial sums");

  std::string suite = "all";
  auto *vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("suite", suite, "suite name or 'all'");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      CliConfig file_cfg;
      load_config_file(config_path, file_cfg);
      // file first, then re-apply command line on top
      CliConfig merged = file_cfg;
      app.clear();
      cfg = merged;
      app.parse(argc, argv);
      if (!config_path.empty()) {
        // CLI flags not given keep the file values via default-initialization above
      }
    }
    if (cfg.format != "json" && cfg.format != "csv")
      throw ConfigError("format must be json or csv");

    if (el->parsed())
      return run_element(cfg, in_s, out_s);
    if (bl->parsed())
      return run_block(cfg, l_in, l_out);
    if (app.get_subcommand("character")->parsed())
      return run_character(cfg);
    if (vf->parsed())
      return run_verify(cfg, suite);
    return 2;
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const TruncationNotConverged &e) {
    json rec{{"error", "non-convergence"}, {"what", e.what()}};
    std::cout << rec.dump() << "\n";
    return 3;
  } catch (const Error &e) {
    json rec{{"error", "config"}, {"what", e.what()}};
    std::cerr << rec.dump() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
