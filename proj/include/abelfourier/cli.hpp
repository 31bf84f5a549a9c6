#pragma once

// Subcommands verify / fourier / hodge. run_cli returns the process exit
// status: 0 all pass, 1 some check failed, 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abelfourier/abelian_model.hpp"
#include "abelfourier/errors.hpp"
#include "abelfourier/fourier_calculus.hpp"
#include "abelfourier/hodge_lattice.hpp"
#include "abelfourier/identity_suite.hpp"
#include "abelfourier/io.hpp"

namespace abelfourier {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

namespace detail {

inline std::vector<Int> parse_type_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    Int d;
    if (item.empty() || d.set_str(item, 10) != 0)
      throw Error(ErrorCode::ParseError, "--type: expected a comma-separated list of integers");
    out.push_back(d);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "--type: empty list");
  return out;
}

inline std::vector<std::string> parse_check_list(const std::string& s) {
  std::vector<std::string> out;
  if (s == "all") return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(find_check(item).name);
  if (out.empty()) throw Error(ErrorCode::UnknownCheck, "--checks: empty list");
  return out;
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
  f << text;
}

/// Canonical file form of a JSON document.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct VarietySource {
  std::optional<unsigned> genus;
  std::string type;
  std::string file;

  AbelianVariety load() const {
    if (!file.empty()) return variety_from_json(read_json_file(file));
    if (!genus || *genus == 0) throw Error(ErrorCode::ParseError, "give --genus N (N >= 1) or --variety FILE");
    std::vector<Int> delta = type.empty() ? std::vector<Int>(*genus, Int(1)) : parse_type_list(type);
    if (delta.size() != *genus) throw Error(ErrorCode::InvalidType, "--type needs exactly g entries");
    return elliptic_product(delta);
  }
};

inline void add_variety_options(CLI::App* cmd, VarietySource& src, bool builtin) {
  auto* file = cmd->add_option("--variety", src.file, "variety file (JSON)");
  if (builtin) {
    auto* g = cmd->add_option("--genus", src.genus, "built-in elliptic product of genus N");
    cmd->add_option("--type", src.type, "polarization type d1,d2,... for --genus");
    g->excludes(file);
  } else {
    file->required();
  }
}

struct VerifyFlags {
  VarietySource variety;
  std::string checks = "all";
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

inline int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  CheckParams p;
  p.seed = f.seed;
  if (!f.variety.file.empty()) {
    p.variety = f.variety.load();
    p.genus = p.variety->genus;
  } else {
    const AbelianVariety A = f.variety.load();  // validates --genus/--type
    p.genus = A.genus;
    if (!A.principal()) p.type = A.type;
  }
  SuiteConfig config;
  config.checks = parse_check_list(f.checks);
  config.grid.push_back(p);
  const VerificationReport report = run_suite(config);
  write_output(f.format == "text" ? report_text(report) : dump(to_json(report)), f.out, out);
  return report.exit_status;
}

struct FourierFlags {
  std::string variety;
  std::string klass;
  bool inverse = false;
  std::string out;
};

inline int cmd_fourier(const FourierFlags& f, std::ostream& out) {
  const AbelianVariety A = variety_from_json(read_json_file(f.variety));
  const Multivector x = multivector_from_json(read_json_file(f.klass));
  if (x.rank() != A.rank())
    throw Error(ErrorCode::RankMismatch,
                "class has rank " + std::to_string(x.rank()) + " but " + A.name + " has rank " + std::to_string(A.rank()));
  const Multivector y = f.inverse ? fourier_inverse(A, x) : fourier(A, x);
  write_output(dump(to_json(y)), f.out, out);
  return kExitPass;
}

struct HodgeFlags {
  VarietySource variety;
  unsigned degree = 0;
  std::string generators;
  bool beta = false;
  std::string format = "text";
  std::string out;
};

inline std::vector<Multivector> read_generators(const std::string& path) {
  const json j = read_json_file(path);
  const json& list = j.is_object() && j.contains("generators") ? j["generators"] : j;
  if (!list.is_array()) throw Error(ErrorCode::ParseError, path + ": expected an array of classes");
  std::vector<Multivector> out;
  for (const auto& c : list) out.push_back(multivector_from_json(c));
  return out;
}

inline int cmd_hodge(const HodgeFlags& f, std::ostream& out) {
  const AbelianVariety A = f.variety.load();
  if (f.degree % 2) throw Error(ErrorCode::PreconditionViolated, "--degree must be even");
  const unsigned k = f.degree / 2;
  const HodgeLattice H = hodge_lattice(A, k);

  std::optional<CokernelInvariants> cert;
  if (!f.generators.empty() || f.beta) {
    std::vector<Multivector> gens = f.generators.empty() ? std::vector<Multivector>{} : read_generators(f.generators);
    if (f.beta) {
      if (k + 1 != A.genus) throw Error(ErrorCode::PreconditionViolated, "--beta needs --degree 2g-2");
      for (auto& b : beta_generators(A)) gens.push_back(std::move(b));
    }
    cert = voisin_certificate(A, k, gens);
  }

  json j{{"variety", A.name}, {"degree", f.degree}, {"rank", H.rank}};
  json basis = json::array();
  for (const auto& e : H.elements()) basis.push_back(to_json(e));
  json sat = json::array();
  for (const auto& d : H.saturation.divisors) sat.push_back(d.get_str());
  j["basis"] = basis;
  j["saturation_divisors"] = sat;
  if (cert) {
    json divs = json::array();
    for (const auto& d : cert->divisors) divs.push_back(d.get_str());
    json torsion = json::array();
    for (const auto& d : cert->torsion()) torsion.push_back(d.get_str());
    j["certificate"] = json{{"divisors", divs}, {"torsion", torsion}, {"free_rank", cert->free_rank},
                            {"trivial", cert->trivial()}};
  }

  if (f.format == "json") {
    write_output(dump(j), f.out, out);
    return kExitPass;
  }
  std::ostringstream os;
  os << "variety: " << A.name << "\n";
  os << "degree: " << f.degree << "\n";
  os << "rank: " << H.rank << "\n";
  os << "saturation divisors:";
  for (const auto& d : H.saturation.divisors) os << " " << d;
  os << "\n";
  for (std::size_t c = 0; c < H.rank; ++c) os << "basis[" << c << "]: " << to_json(H.element(c)).dump() << "\n";
  if (cert) {
    if (cert->trivial()) {
      os << "cokernel trivial\n";
    } else {
      os << "cokernel: free rank " << cert->free_rank << ", torsion";
      for (const auto& d : cert->torsion()) os << " " << d;
      os << "\n";
    }
  }
  write_output(os.str(), f.out, out);
  return kExitPass;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact Fourier, Pontryagin and Hodge calculus on abelian varieties"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  detail::VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "run identity checks and emit a report");
  detail::add_variety_options(verify, vf.variety, true);
  verify->add_option("--checks", vf.checks, "comma-separated check names or ids, or 'all'");
  verify->add_option("--seed", vf.seed, "seed for random inputs");
  verify->add_option("--format", vf.format)->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", vf.out, "write the report here instead of stdout");

  detail::FourierFlags ff;
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of a class");
  fourier_cmd->add_option("--variety", ff.variety, "variety file")->required();
  fourier_cmd->add_option("--class", ff.klass, "class file")->required();
  fourier_cmd->add_flag("--inverse", ff.inverse, "apply the inverse transform (class on the dual)");
  fourier_cmd->add_option("--out", ff.out);

  detail::HodgeFlags hf;
  auto* hodge = app.add_subcommand("hodge", "Hodge lattice and generator certificates");
  detail::add_variety_options(hodge, hf.variety, true);
  hodge->add_option("--degree", hf.degree, "cohomological degree 2k")->required();
  hodge->add_option("--certify-generators", hf.generators, "JSON array of candidate generators");
  hodge->add_flag("--beta", hf.beta, "certify the beta classes of an Hdg^2 basis");
  hodge->add_option("--format", hf.format)->check(CLI::IsMember({"json", "text"}));
  hodge->add_option("--out", hf.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (verify->parsed()) return detail::cmd_verify(vf, out);
    if (fourier_cmd->parsed()) return detail::cmd_fourier(ff, out);
    if (hodge->parsed()) return detail::cmd_hodge(hf, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace abelfourier
