// equidist: roots, measures and discrepancy checks for integer polynomials.

#include <fstream>
#include <iostream>
#include <string>

#include <boost/program_options.hpp>

#include "equidist/cli.hpp"

namespace po = boost::program_options;
using namespace equidist::cli;

namespace {

const char* usage_text =
    "usage: equidist <command> [<poly>] [options]\n"
    "commands: roots, measure, stats, verify, growth, sweep\n";

po::options_description visible_options() {
  po::options_description d("options");
  d.add_options()
      ("help,h", "show this help")
      ("family", po::value<std::string>(), "cycloprod[:k=K], chebyshev[:n=N], trace[:p=P], shiftcheb[:n=N], powm1[:n=N]")
      ("shift", po::value<long>(), "substitute z + c")
      ("domain", po::value<std::string>(), "disk, segment:a=A,b=B or diskplus:points=Z1;Z2")
      ("n-min", po::value<long>(), "smallest degree in a family range")
      ("n-max", po::value<long>(), "largest degree in a family range")
      ("theorem", po::value<std::string>(), "et31|thm31|thm34|energy|cor32|cor35|cor36|growth")
      ("phi", po::value<std::string>(), "test function: cor32, cor33[:z=..], cor35[:a=..,b=..], cor36, cor37[:z=..]")
      ("r", po::value<double>(), "energy radius parameter")
      ("bins", po::value<int>(), "angular sectors for stats and et31")
      ("output,o", po::value<std::string>(), "write to a file instead of stdout")
      ("format", po::value<std::string>(), "csv or json")
      ("plot-data", po::value<std::string>(), "directory for plot series")
      ("seed", po::value<std::uint64_t>(), "seed for initial root guesses")
      ("target-radius", po::value<double>(), "root inclusion radius target")
      ("max-sweeps", po::value<int>(), "iteration cap per precision level")
      ("config", po::value<std::string>(), "key=value file with the same options");
  return d;
}

RunConfig to_config(const po::variables_map& vm) {
  RunConfig c;
  c.command = parse_command(vm["command"].as<std::string>());
  if (vm.count("poly")) c.polynomial = vm["poly"].as<std::string>();
  if (vm.count("family")) c.family = vm["family"].as<std::string>();
  if (vm.count("shift")) c.shift = vm["shift"].as<long>();
  if (vm.count("domain")) c.domain = vm["domain"].as<std::string>();
  if (vm.count("n-min")) c.n_min = vm["n-min"].as<long>();
  if (vm.count("n-max")) c.n_max = vm["n-max"].as<long>();
  if (vm.count("theorem")) c.theorem = vm["theorem"].as<std::string>();
  if (vm.count("phi")) c.phi = vm["phi"].as<std::string>();
  if (vm.count("r")) c.r = vm["r"].as<double>();
  if (vm.count("bins")) c.bins = vm["bins"].as<int>();
  if (vm.count("output")) c.output = vm["output"].as<std::string>();
  if (vm.count("format")) c.format = parse_format(vm["format"].as<std::string>());
  if (vm.count("plot-data")) c.plot_data = vm["plot-data"].as<std::string>();
  if (vm.count("seed")) c.seed = vm["seed"].as<std::uint64_t>();
  if (vm.count("target-radius")) c.target_radius = vm["target-radius"].as<double>();
  if (vm.count("max-sweeps")) c.max_sweeps = vm["max-sweeps"].as<int>();
  c.corrupt_rhs = vm.count("corrupt-rhs") > 0;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const po::options_description visible = visible_options();
  po::options_description hidden;
  hidden.add_options()
      ("command", po::value<std::string>())
      ("poly", po::value<std::string>())
      ("corrupt-rhs", "");
  po::options_description all;
  all.add(visible).add(hidden);
  po::positional_options_description pos;
  pos.add("command", 1).add("poly", 1);

  po::variables_map vm;
  try {
    po::store(po::command_line_parser(argc, argv).options(all).positional(pos).run(), vm);
    if (vm.count("help")) {
      std::cout << usage_text << visible;
      return ok;
    }
    if (vm.count("config")) {
      const std::string path = vm["config"].as<std::string>();
      std::ifstream in(path);
      if (!in) throw UsageError("cannot read config '" + path + "'");
      po::store(po::parse_config_file(in, all), vm);
    }
    po::notify(vm);
    if (!vm.count("command")) throw UsageError("missing command");
    return run(to_config(vm), std::cout, std::cerr);
  } catch (const po::error& e) {
    std::cerr << "usage error: " << e.what() << '\n' << usage_text;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << usage_text;
  }
  return usage_failure;
}
