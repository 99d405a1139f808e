// Copyright 2026 The hyperindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hyperindex/normalform.hpp"
#include "hyperindex/perturblab.hpp"
#include "hyperindex/report.hpp"

#ifndef HYPERINDEX_DATA_DIR
#define HYPERINDEX_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace hyperindex;

namespace {

enum Exit { kOk = 0, kParse = 1, kGenericity = 2, kUnresolved = 3 };

struct Common {
  std::string file;
  std::uint64_t seed = 1;
  std::vector<std::string> params;
  std::string from;
  std::size_t max_extremes = 5000;
};

std::string data_dir() {
  const char* env = std::getenv("HYPERINDEX_DATA");
  return env ? env : HYPERINDEX_DATA_DIR;
}

// A path, or the name of a bundled game.
std::string resolve(const std::string& file) {
  if (fs::exists(file)) return file;
  fs::path p = fs::path(data_dir()) / (file + ".game");
  if (fs::exists(p)) return p.string();
  throw std::runtime_error("no such game: " + file);
}

AnalysisOptions options_from(const Common& c) {
  AnalysisOptions o;
  o.seed = c.seed;
  if (const char* env = std::getenv("HYPERINDEX_SEED"))
    o.seed = std::stoull(env);
  for (const auto& kv : c.params) {
    auto eq = kv.find('=');
    auto v = eq == std::string::npos ? std::nullopt
                                     : parse_rational(kv.substr(eq + 1));
    if (!v) throw std::invalid_argument("bad --param '" + kv + "'");
    o.params[kv.substr(0, eq)] = *v;
  }
  if (!c.from.empty()) {
    auto comma = c.from.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--from expects ROW,COL");
    o.from = {c.from.substr(0, comma), c.from.substr(comma + 1)};
  }
  o.max_extremes = c.max_extremes;
  return o;
}

AnalysisReport run(const Common& c) {
  AnalysisOptions o = options_from(c);
  std::string path = resolve(c.file);
  GameTree tree = load_game(path, o.params);
  auto diags = validate_tree(tree);
  if (!diags.empty()) throw ParseError(1, 1, diags.front());
  return analyze(fs::path(path).stem().string(), tree, o);
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("file", c.file, "game file or bundled game name")->required();
  app->add_option("--seed", c.seed, "seed for perturbation draws");
  app->add_option("--param", c.params, "override a game parameter, name=value");
  app->add_option("--from", c.from,
                  "explore the component of a pure equilibrium ROW,COL");
  app->add_option("--max-extremes", c.max_extremes,
                  "cap on extreme equilibria during exploration");
}

const HyperstabilityReport& component_of(const AnalysisReport& r, int id) {
  if (id < 0 || id >= static_cast<int>(r.hyper.size()))
    throw std::out_of_range("no component " + std::to_string(id));
  return r.hyper[id];
}

int demo_embedding(const std::string& eps_text) {
  std::vector<Rational> grid;
  if (eps_text.empty()) {
    grid = {0, make_rational(1, 100), make_rational(1, 50), make_rational(1, 10)};
  } else {
    auto e = parse_rational(eps_text);
    if (!e) throw std::invalid_argument("bad --eps '" + eps_text + "'");
    grid = {*e};
  }
  const Rational radius = make_rational(1, 10);
  for (const auto& eps : grid) {
    EmbeddingFile f = load_embedding(data_dir() + "/entry-embedding.json", eps);
    TreeNormalForm nf = reduced_tree_normal_form(f.spec.base);
    EquilibriumStructure eqs = analyze_equilibria(nf.game);
    int target = eqs.component_of(f.target_profile);
    Embedding e = build_embedding(f.spec);
    Certification cert =
        verify_no_equilibrium_near(e, eqs.components.at(target), radius);
    std::cout << "eps " << to_string(eps) << ": ";
    if (cert.certified) {
      std::cout << "Certified, " << cert.equilibria << " extreme equilibri"
                << (cert.equilibria == 1 ? "um" : "a")
                << ", nearest image at distance "
                << to_string(cert.distance) << " > " << to_string(radius)
                << '\n';
    } else {
      TreeNormalForm enf = reduced_tree_normal_form(e.tree);
      std::cout << "Counterexample " << format_profile(enf.game, *cert.counterexample)
                << " with image " << format_profile(nf.game, *cert.image)
                << " at distance " << to_string(cert.distance) << '\n';
    }
  }
  return kOk;
}

int demo_duplicates(std::uint64_t seed) {
  AnalysisOptions o;
  o.seed = seed;
  auto base = analyze("entry", load_game(data_dir() + "/entry.game"), o);
  auto dup = analyze("entrymod", load_game(data_dir() + "/entrymod.game"), o);
  auto [rb, mb] = reduce(base.nf.game);
  auto [rd, md] = reduce(dup.nf.game);
  auto bij = find_relabeling(rd, rb);
  if (!bij) {
    std::cout << "reduced normal forms differ\n";
    return kUnresolved;
  }
  std::cout << "entrymod reduces to entry (" << dup.nf.game.rows() << "x"
            << dup.nf.game.cols() << " -> " << rb.rows() << "x" << rb.cols()
            << ")\n";
  bool same = true;
  for (const auto& c : dup.eqs.components) {
    MixedProfile p = md.project(dup.eqs.extremes[c.extremes[0]].profile);
    MixedProfile q{zeros(rb.rows()), zeros(rb.cols())};
    for (std::size_t i = 0; i < p.x.size(); ++i) q.x[(*bij)[0][i]] = p.x[i];
    for (std::size_t j = 0; j < p.y.size(); ++j) q.y[(*bij)[1][j]] = p.y[j];
    int b = base.eqs.component_of(mb.lift(q));
    const auto& di = dup.indices[c.id];
    std::cout << "component " << c.id << " of entrymod, index "
              << (di.value ? std::to_string(*di.value) : "?");
    if (b < 0) {
      std::cout << ", no matching component\n";
      same = false;
      continue;
    }
    const auto& bi = base.indices[b];
    std::cout << "; component " << b << " of entry, index "
              << (bi.value ? std::to_string(*bi.value) : "?") << '\n';
    same = same && di.value && bi.value && *di.value == *bi.value;
  }
  std::cout << (same ? "indices agree\n" : "indices differ\n");
  return same ? kOk : kUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium components, indices and hyperstability of "
               "two-player extensive-form games"};
  app.require_subcommand(1);

  Common analyze_args;
  std::string json_out;
  bool strict = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report");
  add_common(analyze_cmd, analyze_args);
  analyze_cmd->add_option("--json", json_out, "write the JSON report here, - for stdout");
  analyze_cmd->add_flag("--strict", strict, "exit 2 when genericity fails");

  Common index_args;
  int index_component = 0;
  auto* index_cmd = app.add_subcommand("index", "index of one component");
  add_common(index_cmd, index_args);
  index_cmd->add_option("--component", index_component)->required();

  Common excluded_args;
  int excluded_component = 0, excluded_player = 1;
  auto* excluded_cmd = app.add_subcommand("excluded", "one player's excluded game");
  add_common(excluded_cmd, excluded_args);
  excluded_cmd->add_option("--component", excluded_component)->required();
  excluded_cmd->add_option("--player", excluded_player)
      ->required()
      ->check(CLI::Range(1, 2));

  std::string demo_name, demo_eps;
  std::uint64_t demo_seed = 1;
  auto* demo_cmd = app.add_subcommand("demo", "bundled demonstrations");
  demo_cmd->add_option("name", demo_name)
      ->required()
      ->check(CLI::IsMember({"entry-embedding", "entrymod-duplicates"}));
  demo_cmd->add_option("--eps", demo_eps, "a single eps for entry-embedding");
  demo_cmd->add_option("--seed", demo_seed);

  auto* corpus_cmd = app.add_subcommand("corpus", "list bundled games");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) {
      AnalysisReport r = run(analyze_args);
      std::cout << to_text(r);
      if (!json_out.empty()) {
        std::string doc = to_json(r).dump(2) + "\n";
        if (json_out == "-") {
          std::cout << doc;
        } else {
          std::ofstream(json_out) << doc;
        }
      }
      if (strict && !r.generic()) return kGenericity;
      return r.unresolved() ? kUnresolved : kOk;
    }
    if (*index_cmd) {
      AnalysisReport r = run(index_args);
      const auto& h = component_of(r, index_component);
      std::optional<int> v = r.local ? h.product : r.indices[h.component].value;
      std::string method = r.local ? "factorization"
                           : v     ? to_string(r.indices[h.component].method)
                                   : "none";
      std::cout << "component " << index_component << " index "
                << (v ? std::to_string(*v) : "unresolved") << " (" << method
                << ")\n";
      return v ? kOk : kUnresolved;
    }
    if (*excluded_cmd) {
      AnalysisReport r = run(excluded_args);
      const auto& h = component_of(r, excluded_component);
      if (!h.genericity.unique_outcome) {
        std::cout << "component " << excluded_component
                  << " has no unique outcome\n";
        return kGenericity;
      }
      std::cout << "component " << excluded_component << '\n'
                << excluded_text(h, excluded_player);
      return kOk;
    }
    if (*demo_cmd) {
      if (demo_name == "entry-embedding") return demo_embedding(demo_eps);
      return demo_duplicates(demo_seed);
    }
    if (*corpus_cmd) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(data_dir()))
        files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::ifstream in(f);
        std::string first;
        std::getline(in, first);
        if (f.extension() == ".game") {
          std::string about = first.rfind("#", 0) == 0 ? first.substr(1) : "";
          while (!about.empty() && about.front() == ' ') about.erase(0, 1);
          std::cout << f.stem().string() << "  " << about << '\n';
        } else if (f.extension() == ".json") {
          std::cout << f.stem().string() << "  embedding demo input\n";
        }
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnresolved;
  }
  return kOk;
}
