// wgame: command-line front end. Argument parsing only; the commands live in
// wgame/cli.hpp.

#include <CLI11.hpp>

#include "wgame/cli.hpp"

int main(int argc, char** argv) {
  using wgame::cli::Options;
  Options o;
  CLI::App app{"Analyses of finite games in intrinsic (W-model) form"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for every sampled quantity");

  auto game_arg = [&](CLI::App* sub) {
    sub->add_option("game", o.game, "Game spec (JSON), or - for standard input")->required();
    sub->fallthrough();
  };
  auto ordering_arg = [&](CLI::App* sub) {
    sub->add_option("--ordering", o.ordering, "Constant ordering as comma-separated agent labels");
  };

  game_arg(app.add_subcommand("validate", "Parse and validate a game spec"));
  game_arg(app.add_subcommand("solvable", "Decide solvability by exhaustive enumeration"));

  auto* causal = app.add_subcommand("causal", "Search for (or check) a causal ordering");
  game_arg(causal);
  ordering_arg(causal);

  auto* recall = app.add_subcommand("recall", "Check perfect recall of a player");
  game_arg(recall);
  ordering_arg(recall);
  recall->add_option("--player", o.player, "Player label")->required();

  auto* push = app.add_subcommand("push", "Outcome distribution of a randomized profile");
  game_arg(push);
  push->add_option("--mixed", o.strategies, "Strategy file, one per player")->required();

  auto* eu = app.add_subcommand("eu", "Expected utilities of a randomized profile");
  game_arg(eu);
  eu->add_option("--mixed", o.strategies, "Strategy file, one per player")->required();

  auto* transform = app.add_subcommand("transform", "Convert between strategy kinds");
  game_arg(transform);
  ordering_arg(transform);
  transform->add_option("--input", o.input, "Strategy file")->required();
  transform->add_option("--to", o.to, "Target kind")
      ->required()
      ->check(CLI::IsMember({"mixed", "product-mixed", "behavioral"}));

  auto* kuhn = app.add_subcommand("kuhn-check", "Verify Kuhn's equivalence for a mixed strategy");
  game_arg(kuhn);
  ordering_arg(kuhn);
  kuhn->add_option("--player", o.player, "Player label (must match the strategy file)");
  kuhn->add_option("--mixed", o.strategies, "Mixed strategy file")->required()->expected(1);
  kuhn->add_option("--samples", o.samples, "Number of sampled opponent profiles");

  auto* gallery = app.add_subcommand("gallery", "Print a fixture game spec, or list fixtures");
  gallery->add_option("name", o.name, "Fixture name");
  gallery->add_option("--horizon", o.horizon, "Number of stages for SEQ");
  gallery->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    wgame::io::Json report{{"command", argc > 1 ? argv[1] : ""},
                           {"error", {{"kind", "usage"}, {"message", e.what()}}}};
    std::cout << report.dump(2) << "\n";
    return wgame::cli::kUsage;
  }
  o.verb = app.get_subcommands().front()->get_name();
  return wgame::cli::run_command(o, std::cout, std::cerr);
}
