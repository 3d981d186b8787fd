/*
 * Copyright 2026 The nashpriv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "commands.hpp"

#include "nashpriv/delivery.hpp"
#include "nashpriv/dot.hpp"
#include "nashpriv/errors.hpp"
#include "nashpriv/experiments.hpp"
#include "nashpriv/io.hpp"
#include "nashpriv/protocol.hpp"
#include "nashpriv/synthesis.hpp"
#include "nashpriv/wrprivacy.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace nashpriv::cli {

namespace {

struct RunConfig {
    std::string game;
    std::string semi;
    std::string network;
    std::string pref1;
    std::string pref2;
    std::vector<std::string> secret;
    std::string secret_file;
    std::string order;
    std::string method = "uc";
    std::size_t search_limit = kDefaultSearchLimit;
    std::size_t grid = 0;
    std::size_t trials = 1000;
    std::uint64_t seed = 7;
    std::string out;
    std::string format;
    std::size_t threads = 0;
    std::vector<std::size_t> init;
    int holder = 1;
    bool records = false;
    bool verify = false;
    std::string view;
};

/// Game, automaton and product loaded from --game/--semi, --network or --grid-size.
struct Model {
    std::shared_ptr<const SemiAutomaton> automaton;
    std::shared_ptr<const ProductGame> product;
    std::shared_ptr<const GridGame> grid;
    std::optional<Network> network;
};

/// Parses `path` with `parse`, prefixing input errors with the file name.
template <class F>
auto from_file(const std::string& path, F&& parse)
{
    const Json j = read_json_file(path);
    try {
        return parse(j);
    } catch (const InputError& e) {
        throw InputError(e.what(), path);
    }
}

Player holder_of(int h)
{
    if (h == 1) return Player::One;
    if (h == 2) return Player::Two;
    throw InputError("holder must be 1 or 2", "--holder");
}

Model load_model(const RunConfig& cfg, std::ostream& err)
{
    const int sources = int(!cfg.game.empty() || !cfg.semi.empty()) + int(!cfg.network.empty()) + int(cfg.grid != 0);
    if (sources != 1) throw InputError("give exactly one of --game/--semi, --network or --grid-size");
    Model m;
    if (cfg.grid != 0) {
        const std::size_t row = cfg.init.empty() ? cfg.grid / 2 : cfg.init[0];
        const std::size_t col = cfg.init.empty() ? cfg.grid / 2 : cfg.init[1];
        m.grid = std::make_shared<const GridGame>(cfg.grid, row, col, holder_of(cfg.holder));
        m.product = m.grid->shared_product();
        m.automaton = std::shared_ptr<const SemiAutomaton>(m.product, &m.product->automaton());
        m.network = m.grid->network();
        return m;
    }
    if (!cfg.network.empty()) {
        Network net = from_file(cfg.network, [](const Json& j) { return network_from_json(j); });
        DeliveryModel dm = build_delivery_game(net);
        for (const auto& w : dm.warnings) err << "warning: " << w << "\n";
        m.automaton = dm.automaton;
        m.product = std::make_shared<const ProductGame>(dm.product());
        m.network = std::move(net);
        return m;
    }
    if (cfg.game.empty() || cfg.semi.empty()) throw InputError("--game and --semi must be given together");
    auto game = std::make_shared<const TerminatingGame>(
        from_file(cfg.game, [](const Json& j) { return game_from_json(j); }));
    m.automaton = std::make_shared<const SemiAutomaton>(
        from_file(cfg.semi, [](const Json& j) { return semi_from_json(j); }));
    try {
        m.product = std::make_shared<const ProductGame>(build_product(game, m.automaton));
    } catch (const AlphabetMismatch& e) {
        throw InputError(e.what(), cfg.semi);
    }
    return m;
}

Preorder load_preorder(const std::string& path, const char* flag, const SemiAutomaton& sa)
{
    if (path.empty()) throw InputError("missing preference file", flag);
    return from_file(path, [&](const Json& j) { return preorder_from_json(j, sa); });
}

std::vector<QState> parse_order(const std::string& text, const SemiAutomaton& sa, std::ostream& err)
{
    if (text.empty()) {
        std::string names;
        for (QState q = 0; q < sa.num_states(); ++q) names += (q ? "," : "") + sa.state_name(q);
        err << "query order: " << names << " (ascending ids)\n";
        return ascending_order(sa.num_states());
    }
    std::vector<QState> order;
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto q = sa.find_state(name);
        if (!q) throw InputError("unknown state '" + name + "'", "--order");
        if (std::find(order.begin(), order.end(), *q) != order.end()) {
            throw InputError("state '" + name + "' appears twice", "--order");
        }
        order.push_back(*q);
    }
    return order;
}

Secret load_secret(const RunConfig& cfg, const SemiAutomaton& sa)
{
    if (!cfg.secret.empty() && !cfg.secret_file.empty()) throw InputError("give --secret or --secret-file, not both");
    if (!cfg.secret_file.empty()) {
        return from_file(cfg.secret_file, [&](const Json& j) { return secret_from_json(j, sa); });
    }
    if (cfg.secret.empty()) throw InputError("missing secret", "--secret");
    auto x = sa.find_state(cfg.secret[0]);
    if (!x) throw InputError("unknown state '" + cfg.secret[0] + "'", "--secret");
    auto y = sa.find_state(cfg.secret[1]);
    if (!y) throw InputError("unknown state '" + cfg.secret[1] + "'", "--secret");
    if (*x == *y) throw InputError("x and y must differ", "--secret");
    return Secret::strict_pair(*x, *y);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
    } else {
        write_text_file(cfg.out, text);
    }
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    if (cfg.format.empty()) return;
    for (const char* f : allowed) {
        if (cfg.format == f) return;
    }
    throw InputError("unsupported format '" + cfg.format + "' for this command", "--format");
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_format(cfg, {"json"});
    const Model m = load_model(cfg, err);
    const Preorder e1 = load_preorder(cfg.pref1, "--pref1", *m.automaton);
    const Preorder e2 = load_preorder(cfg.pref2, "--pref2", *m.automaton);
    const auto order = parse_order(cfg.order, *m.automaton, err);
    SynthesisStats stats;
    const EquilibriumResult result = synthesize_ne(*m.product, e1, e2, order, &stats);
    Json j = result_to_json(*m.product, result);
    j["stats"] = {{"states_tried", stats.states_tried}, {"buchi_games_solved", stats.buchi_games_solved}};
    if (cfg.verify && std::holds_alternative<Equilibrium>(result)) j["verified"] = verify_ne(*m.product, e1, e2, result);
    emit(cfg, j.dump(2) + "\n", out);
    return std::holds_alternative<Equilibrium>(result) ? kOk : kNoEquilibrium;
}

int cmd_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_format(cfg, {"json"});
    const Model m = load_model(cfg, err);
    const Preorder e1 = load_preorder(cfg.pref1, "--pref1", *m.automaton);
    const Preorder e2 = load_preorder(cfg.pref2, "--pref2", *m.automaton);
    const Secret secret = load_secret(cfg, *m.automaton);
    const auto order = parse_order(cfg.order, *m.automaton, err);

    auto oracle = std::make_shared<const RegionOracle>(m.product);
    std::shared_ptr<const PrefGenerator> g1;
    std::shared_ptr<const PrefGenerator> g2;
    if (cfg.method == "uc") {
        g1 = g2 = std::make_shared<const UpperClosureGenerator>();
    } else if (cfg.method == "wr") {
        if (!m.grid) throw InputError("the wr method needs a grid game", "--grid-size");
        g1 = std::make_shared<const WinningRegionGenerator>(m.grid, cfg.search_limit, Player::One);
        g2 = std::make_shared<const WinningRegionGenerator>(m.grid, cfg.search_limit, Player::Two);
    } else {
        throw InputError("method must be uc or wr", "--method");
    }
    Responder r1(ResponderConfig{Player::One, e1, secret, oracle, g1});
    Responder r2(ResponderConfig{Player::Two, e2, secret, oracle, g2});
    const MediationResult med = mediate(*m.product, r1, r2, order);

    Json names = Json::array();
    for (QState q : order) names.push_back(m.automaton->state_name(q));
    Json j = {{"method", cfg.method},
              {"order", std::move(names)},
              {"transcript", transcript_to_json(*m.product, med.transcript)},
              {"result", result_to_json(*m.product, med.result)}};
    emit(cfg, j.dump(2) + "\n", out);
    switch (med.transcript.outcome) {
    case Outcome::Equilibrium: return kOk;
    case Outcome::NoneExists: return kNoEquilibrium;
    case Outcome::Stopped: return kStopped;
    }
    return kError;
}

std::pair<std::size_t, std::size_t> grid_location(const std::string& name, std::size_t k)
{
    std::size_t i = 0;
    std::size_t j = 0;
    char r = 0;
    char c = 0;
    std::istringstream in(name);
    if (!(in >> r >> i >> c >> j) || r != 'r' || c != 'c' || in.peek() != EOF || i >= k || j >= k) {
        throw InputError("expected a grid location r<i>c<j> inside the grid, got '" + name + "'", "--secret");
    }
    return {i, j};
}

int cmd_experiment(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    require_format(cfg, {"csv", "json"});
    ExperimentConfig ec;
    ec.grid = cfg.grid == 0 ? 3 : cfg.grid;
    ec.trials = cfg.trials;
    ec.seed = cfg.seed;
    ec.limit = cfg.search_limit;
    ec.threads = cfg.threads;
    ec.holder = holder_of(cfg.holder);
    if (cfg.method == "uc") {
        ec.method = Method::UpperClosure;
    } else if (cfg.method == "wr") {
        ec.method = Method::WinningRegion;
    } else {
        throw InputError("method must be uc or wr", "--method");
    }
    ec.init_row = cfg.init.empty() ? ec.grid / 2 : cfg.init[0];
    ec.init_col = cfg.init.empty() ? ec.grid / 2 : cfg.init[1];
    if (!cfg.secret.empty()) {
        ec.x = grid_location(cfg.secret[0], ec.grid);
        ec.y = grid_location(cfg.secret[1], ec.grid);
        if (ec.x == ec.y) throw InputError("x and y must differ", "--secret");
    }
    const StopDistribution d = stop_distribution(ec);
    const bool json = cfg.format == "json" || (cfg.format.empty() && cfg.out.ends_with(".json"));
    emit(cfg, json ? to_json(d, cfg.records) + "\n" : to_csv(d), out);
    return kOk;
}

int cmd_export_dot(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_format(cfg, {"dot"});
    const Model m = load_model(cfg, err);
    const std::string view = cfg.view.empty() ? (m.network ? "network" : "product") : cfg.view;
    if (view == "network") {
        if (!m.network) throw InputError("the network view needs --network or --grid-size", "--view");
        const std::string f1 = network_to_dot(*m.network, Player::One);
        const std::string f2 = network_to_dot(*m.network, Player::Two);
        if (cfg.out.empty()) {
            out << f1 << f2;
        } else {
            write_text_file(cfg.out + ".f1.dot", f1);
            write_text_file(cfg.out + ".f2.dot", f2);
        }
        return kOk;
    }
    if (view != "product") throw InputError("view must be network or product", "--view");
    DotOptions options;
    if (!cfg.pref1.empty() || !cfg.pref2.empty()) {
        const Preorder e1 = load_preorder(cfg.pref1, "--pref1", *m.automaton);
        const Preorder e2 = load_preorder(cfg.pref2, "--pref2", *m.automaton);
        const auto result = synthesize_ne(*m.product, e1, e2, parse_order(cfg.order, *m.automaton, err));
        if (const auto* eq = std::get_if<Equilibrium>(&result)) options.path = eq->nominal.nodes;
    }
    emit(cfg, product_to_dot(*m.product, options), out);
    return kOk;
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_format(cfg, {"json"});
    if (cfg.network.empty()) throw InputError("missing network file", "--network");
    const Network net = from_file(cfg.network, [](const Json& j) { return network_from_json(j); });
    const DeliveryModel dm = build_delivery_game(net);
    for (const auto& w : dm.warnings) err << "warning: " << w << "\n";
    const Json game = game_to_json(dm.game->base());
    const Json semi = semi_to_json(*dm.automaton);
    if (cfg.out.empty()) {
        out << Json{{"game", game}, {"semi", semi}}.dump(2) << "\n";
    } else {
        std::filesystem::create_directories(cfg.out);
        write_text_file((std::filesystem::path(cfg.out) / "game.json").string(), game.dump(2) + "\n");
        write_text_file((std::filesystem::path(cfg.out) / "semi.json").string(), semi.dump(2) + "\n");
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Nash equilibrium synthesis with private preferences", "nashpriv"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML or INI file with option values")->check(CLI::ExistingFile);
    app.allow_config_extras(false);

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--game", cfg.game, "Game graph JSON")->check(CLI::ExistingFile);
        sub->add_option("--semi", cfg.semi, "Semi-automaton JSON")->check(CLI::ExistingFile);
        sub->add_option("--network", cfg.network, "Delivery network JSON")->check(CLI::ExistingFile);
        sub->add_option("--grid-size,--grid", cfg.grid, "Side of a grid delivery game")->check(CLI::Range(1, 8));
        sub->add_option("--init", cfg.init, "Initial grid row and column")->expected(2);
        sub->add_option("--holder", cfg.holder, "Initial package holder")->check(CLI::IsMember({1, 2}));
    };
    auto add_prefs = [&](CLI::App* sub) {
        sub->add_option("--pref1", cfg.pref1, "Player 1 preorder JSON")->check(CLI::ExistingFile);
        sub->add_option("--pref2", cfg.pref2, "Player 2 preorder JSON")->check(CLI::ExistingFile);
        sub->add_option("--order", cfg.order, "Query order q1,q2,...");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
        sub->add_option("--format", cfg.format, "json, csv or dot");
    };

    CLI::App* solve = app.add_subcommand("solve", "Synthesize an equilibrium (exit 0 found, 3 none)");
    add_model(solve);
    add_prefs(solve);
    add_output(solve);
    solve->add_flag("--verify", cfg.verify, "Re-check the equilibrium from first principles");

    CLI::App* protocol = app.add_subcommand("protocol", "Run a mediated session (exit 0 found, 3 none, 4 stopped)");
    add_model(protocol);
    add_prefs(protocol);
    add_output(protocol);
    protocol->add_option("--secret", cfg.secret, "Secret x y: x strictly preferred to y")->expected(2);
    protocol->add_option("--secret-file", cfg.secret_file, "Secret JSON")->check(CLI::ExistingFile);
    protocol->add_option("--method", cfg.method, "uc or wr")->check(CLI::IsMember({"uc", "wr"}));
    protocol->add_option("--search-limit", cfg.search_limit, "Threshold search limit for wr")->check(CLI::PositiveNumber);

    CLI::App* experiment = app.add_subcommand("experiment", "Estimate when player 1 replies STOP on a grid");
    add_output(experiment);
    experiment->add_option("--grid-size,--grid", cfg.grid, "Grid side")->check(CLI::Range(2, 8));
    experiment->add_option("--method", cfg.method, "uc or wr")->check(CLI::IsMember({"uc", "wr"}));
    experiment->add_option("--trials", cfg.trials, "Number of trials");
    experiment->add_option("--seed", cfg.seed, "Master seed");
    experiment->add_option("--secret", cfg.secret, "Secret locations x y, e.g. r0c0 r0c1")->expected(2);
    experiment->add_option("--search-limit", cfg.search_limit, "Threshold search limit for wr")->check(CLI::PositiveNumber);
    experiment->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
    experiment->add_option("--init", cfg.init, "Initial row and column")->expected(2);
    experiment->add_option("--holder", cfg.holder, "Initial package holder")->check(CLI::IsMember({1, 2}));
    experiment->add_flag("--records", cfg.records, "Include per-trial records in JSON output");

    CLI::App* dot = app.add_subcommand("export-dot", "Write Graphviz views of a network or product game");
    add_model(dot);
    add_prefs(dot);
    add_output(dot);
    dot->add_option("--view", cfg.view, "network or product")->check(CLI::IsMember({"network", "product"}));

    CLI::App* build = app.add_subcommand("build", "Convert a delivery network into game and semi-automaton JSON");
    build->add_option("--network", cfg.network, "Delivery network JSON")->required()->check(CLI::ExistingFile);
    build->add_option("--out", cfg.out, "Output directory (stdout when omitted)");
    build->add_option("--format", cfg.format, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg, out, err);
        if (protocol->parsed()) return cmd_protocol(cfg, out, err);
        if (experiment->parsed()) return cmd_experiment(cfg, out, err);
        if (dot->parsed()) return cmd_export_dot(cfg, out, err);
        return cmd_build(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

} // namespace nashpriv::cli
