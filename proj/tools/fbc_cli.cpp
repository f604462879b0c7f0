#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fbc/io.hpp"

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  fbc::require(f.good(), "cannot write " + out);
  f << text;
}

std::vector<int> parse_lengths(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      fbc::require(used == item.size(), "bad length '" + item + "'");
    } catch (const std::logic_error&) {
      throw fbc::InputError("bad length '" + item + "'");
    }
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of free-by-cyclic groups"};
  app.require_subcommand(1);
  double tol = 1e-9;
  std::string out;

  std::string spec;
  auto* inv = app.add_subcommand("invariants", "Fingerprint of a monodromy spec file");
  inv->add_option("--spec", spec, "spec JSON")->required();
  inv->add_option("--tol", tol, "real tolerance");
  inv->add_option("--out", out, "output path (default stdout)");

  std::string a, b;
  auto* cmp = app.add_subcommand("compare", "Compare the fingerprints of two spec files");
  cmp->add_option("--a", a, "first spec JSON")->required();
  cmp->add_option("--b", b, "second spec JSON")->required();
  cmp->add_option("--tol", tol, "real tolerance");
  cmp->add_option("--out", out, "output path (default stdout)");

  std::string map;
  int period = 1;
  auto* tt = app.add_subcommand("traintrack", "Strata, stretch factor and periodic points of a graph map");
  tt->add_option("--map", map, "graph map JSON")->required();
  tt->add_option("--period", period, "largest period m")->check(CLI::PositiveNumber);
  tt->add_option("--tol", tol, "PF tolerance");
  tt->add_option("--out", out, "output path (default stdout)");

  auto* cox = app.add_subcommand("coxeter", "Stretch factor of a universal Coxeter graph map and its free double");
  cox->add_option("--map", map, "Coxeter graph map JSON")->required();
  cox->add_option("--tol", tol, "agreement tolerance");
  cox->add_option("--out", out, "output path (default stdout)");

  int rank = 3, trials = 100, bound = fbc::kDefaultPowerBound;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string lengths = "5,10,20";
  auto* rnd = app.add_subcommand("random", "Genericity experiment over random Nielsen words");
  rnd->add_option("--rank", rank, "free group rank")->check(CLI::PositiveNumber);
  rnd->add_option("--lengths", lengths, "comma separated word lengths");
  rnd->add_option("--trials", trials, "samples per length");
  rnd->add_option("--seed", seed, "random seed");
  rnd->add_option("--power-bound", bound, "power bound K")->check(CLI::PositiveNumber);
  rnd->add_option("--threads", threads, "worker threads (0 = all cores)");
  rnd->add_option("--out", out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    fbc::require(tol > 0, "--tol must be positive");
    if (*inv) {
      const auto fp = fbc::compute_fingerprint(fbc::fingerprint_input_from_json(fbc::read_json_file(spec)));
      emit(fbc::to_json(fp).dump(2) + "\n", out);
    } else if (*cmp) {
      const auto fa = fbc::compute_fingerprint(fbc::fingerprint_input_from_json(fbc::read_json_file(a)));
      const auto fb = fbc::compute_fingerprint(fbc::fingerprint_input_from_json(fbc::read_json_file(b)));
      emit(fbc::to_json(fbc::compare(fa, fb, tol)).dump(2) + "\n", out);
    } else if (*tt) {
      const auto g = fbc::graphmap_from_json(fbc::read_json_file(map));
      emit(fbc::traintrack_report(g, period, tol).dump(2) + "\n", out);
    } else if (*cox) {
      const auto g = fbc::coxeter_map_from_json(fbc::read_json_file(map));
      emit(fbc::coxeter_report(g, tol).dump(2) + "\n", out);
    } else if (*rnd) {
      const auto rows = fbc::genericity_experiment(rank, parse_lengths(lengths), trials, seed, bound, threads);
      emit(fbc::experiment_csv(rows), out);
    }
  } catch (const fbc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const fbc::ContractError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
