#include <iostream>

#include <CLI11.hpp>

#include "chaincore/cli.hpp"

int main(int argc, char **argv)
{
  using namespace chaincore;

  CLI::App app{"Chain groups, Clifford duality and fusion-ring checks for finite groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  std::int64_t prime = 0;

  auto common = [&](CLI::App *sub, bool with_group) {
    if (with_group) {
      sub->add_option("-g,--group", cfg.group, "group spec, e.g. S4, D5, C2xC4, perm:[(0 1 2),(0 1)]")
        ->required();
      sub->add_option("-p,--prime", prime, "prime for modular characters (p = 1 mod exponent, p > |G|)");
    }
    sub->add_option("-f,--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-l,--limit", cfg.coset_limit, "coset enumeration limit");
    sub->add_option("--cap", cfg.order_cap, "maximum group order");
  };

  auto *chain = app.add_subcommand("chain", "compute and certify the chain group C(G,H)");
  common(chain, true);
  chain->add_option("-s,--subgroup", cfg.subgroups,
                    "subgroup spec (repeat twice as K then H to check functoriality)");

  auto *clifford = app.add_subcommand("clifford", "verify the ~_H / ~_B partition duality");
  common(clifford, true);
  clifford->add_option("-s,--subgroup", cfg.subgroups, "normal subgroup spec")->expected(1);
  clifford->add_flag("--force", cfg.force, "run the checks on a non-normal subgroup");

  auto *fusion = app.add_subcommand("fusion", "validate a fusion-ring JSON file and compute its chain group");
  common(fusion, false);
  fusion->add_option("input", cfg.input, "fusion JSON file")->required()->check(CLI::ExistingFile);
  fusion->add_flag("--allow-noncommutative", cfg.allow_noncommutative,
                   "accept non-commutative rings (invariants only)");

  auto *corpus = app.add_subcommand("corpus", "sweep every subgroup of every group in a manifest");
  common(corpus, false);
  corpus->add_option("-m,--manifest", cfg.manifest, "manifest file, one group spec per line");
  corpus->add_option("-j,--workers", cfg.workers, "worker threads (0 = hardware)");
  corpus->add_option("-p,--prime", prime, "fixed prime for every group");

  auto *group = app.add_subcommand("group", "print group data and its modular character table");
  common(group, true);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (prime != 0)
    cfg.prime = prime;

  auto result = run(cfg);
  if (cfg.format == OutputFormat::Json)
    std::cout << to_json(result.report).dump(2) << "\n";
  else
    std::cout << render_text(result.report);
  return result.exit_code;
}
