#include "slab/cli/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <vector>

#include "slab/error.hpp"
#include "slab/format.hpp"

namespace slab::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  fail(ErrorKind::kBadConfig, "key '" + std::string(key) + "': '" + std::string(value) +
                                  "' is not " + std::string(want));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value, std::is_floating_point_v<T> ? "a number" : "a non-negative integer");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value, "true or false");
}

struct Field {
  std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field integer_field(T ExperimentConfig::*section, std::size_t T::*member) {
  return {[=](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*section.*member = parse_number<std::size_t>(k, v);
          },
          [=](const ExperimentConfig& c) { return std::to_string(c.*section.*member); }};
}

template <typename T>
Field real_field(T ExperimentConfig::*section, double T::*member) {
  return {[=](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*section.*member = parse_number<double>(k, v);
          },
          [=](const ExperimentConfig& c) { return format_double(c.*section.*member); }};
}

Field optional_path(std::optional<std::filesystem::path> DataConfig::*member,
                    const std::filesystem::path& base) {
  return {[=](ExperimentConfig& c, std::string_view, std::string_view v) {
            if (v.empty()) {
              c.data.*member = std::nullopt;
            } else {
              c.data.*member = base / std::filesystem::path(std::string(v));
            }
          },
          [=](const ExperimentConfig& c) {
            return (c.data.*member) ? (c.data.*member)->string() : std::string();
          }};
}

using Registry = std::vector<std::pair<std::string_view, Field>>;

Registry make_registry(const std::filesystem::path& base) {
  using models::ModelConfig;
  using optim::OptConfig;
  Registry r;
  r.emplace_back("seed", Field{[](ExperimentConfig& c, std::string_view k, std::string_view v) {
                                 c.seed = parse_number<std::uint64_t>(k, v);
                               },
                               [](const ExperimentConfig& c) { return std::to_string(c.seed); }});

  r.emplace_back("model.kind",
                 Field{[](ExperimentConfig& c, std::string_view k, std::string_view v) {
                         auto kind = models::parse_model_kind(v);
                         if (!kind) bad_value(k, v, "one of transformer, coverage, pointer");
                         c.model.kind = *kind;
                       },
                       [](const ExperimentConfig& c) {
                         return std::string(models::model_kind_name(c.model.kind));
                       }});
  r.emplace_back("model.cell",
                 Field{[](ExperimentConfig& c, std::string_view k, std::string_view v) {
                         auto cell = models::parse_cell_kind(v);
                         if (!cell) bad_value(k, v, "one of gru, lstm");
                         c.model.cell = *cell;
                       },
                       [](const ExperimentConfig& c) {
                         return std::string(models::cell_kind_name(c.model.cell));
                       }});
  r.emplace_back("model.hidden", integer_field(&ExperimentConfig::model, &ModelConfig::hidden));
  r.emplace_back("model.embed_dim", integer_field(&ExperimentConfig::model, &ModelConfig::embed_dim));
  r.emplace_back("model.heads", integer_field(&ExperimentConfig::model, &ModelConfig::heads));
  r.emplace_back("model.enc_blocks", integer_field(&ExperimentConfig::model, &ModelConfig::enc_blocks));
  r.emplace_back("model.dec_blocks", integer_field(&ExperimentConfig::model, &ModelConfig::dec_blocks));
  r.emplace_back("model.ffn_depth", integer_field(&ExperimentConfig::model, &ModelConfig::ffn_depth));
  r.emplace_back("model.ffn_width", integer_field(&ExperimentConfig::model, &ModelConfig::ffn_width));
  r.emplace_back("model.coverage_weight",
                 real_field(&ExperimentConfig::model, &ModelConfig::coverage_weight));
  r.emplace_back("model.dropout", real_field(&ExperimentConfig::model, &ModelConfig::dropout));
  r.emplace_back("model.train_embeddings",
                 Field{[](ExperimentConfig& c, std::string_view k, std::string_view v) {
                         c.model.train_embeddings = parse_bool(k, v);
                       },
                       [](const ExperimentConfig& c) {
                         return std::string(c.model.train_embeddings ? "true" : "false");
                       }});

  r.emplace_back("optimizer.name",
                 Field{[](ExperimentConfig& c, std::string_view k, std::string_view v) {
                         auto a = optim::parse_algorithm(v);
                         if (!a) {
                           fail(ErrorKind::kBadConfig,
                                "key '" + std::string(k) + "': unsupported optimizer '" +
                                    std::string(v) +
                                    "' (gradient-free only: pso, woa, aco, random)");
                         }
                         c.algorithm = *a;
                       },
                       [](const ExperimentConfig& c) {
                         return std::string(optim::algorithm_name(c.algorithm));
                       }});
  r.emplace_back("optimizer.population",
                 integer_field(&ExperimentConfig::optimizer, &OptConfig::population));
  r.emplace_back("optimizer.iterations",
                 integer_field(&ExperimentConfig::optimizer, &OptConfig::iterations));
  r.emplace_back("optimizer.lo", real_field(&ExperimentConfig::optimizer, &OptConfig::lo));
  r.emplace_back("optimizer.hi", real_field(&ExperimentConfig::optimizer, &OptConfig::hi));
  r.emplace_back("optimizer.threads",
                 integer_field(&ExperimentConfig::optimizer, &OptConfig::threads));
  auto sub = [](auto OptConfig::*group, auto member) {
    return Field{[=](ExperimentConfig& c, std::string_view k, std::string_view v) {
                   using V = std::remove_cvref_t<decltype(c.optimizer.*group.*member)>;
                   c.optimizer.*group.*member = parse_number<V>(k, v);
                 },
                 [=](const ExperimentConfig& c) {
                   const auto value = c.optimizer.*group.*member;
                   if constexpr (std::is_floating_point_v<decltype(value)>) {
                     return format_double(value);
                   } else {
                     return std::to_string(value);
                   }
                 }};
  };
  r.emplace_back("optimizer.pso.inertia", sub(&OptConfig::pso, &optim::PsoConstants::inertia));
  r.emplace_back("optimizer.pso.cognitive", sub(&OptConfig::pso, &optim::PsoConstants::cognitive));
  r.emplace_back("optimizer.pso.social", sub(&OptConfig::pso, &optim::PsoConstants::social));
  r.emplace_back("optimizer.woa.spiral", sub(&OptConfig::woa, &optim::WoaConstants::spiral));
  r.emplace_back("optimizer.aco.archive", sub(&OptConfig::aco, &optim::AcoConstants::archive));
  r.emplace_back("optimizer.aco.locality", sub(&OptConfig::aco, &optim::AcoConstants::locality));
  r.emplace_back("optimizer.aco.deviation", sub(&OptConfig::aco, &optim::AcoConstants::deviation));

  r.emplace_back("data.corpus",
                 Field{[base](ExperimentConfig& c, std::string_view, std::string_view v) {
                         c.data.corpus = v.empty() ? std::filesystem::path()
                                                   : base / std::filesystem::path(std::string(v));
                       },
                       [](const ExperimentConfig& c) { return c.data.corpus.string(); }});
  const char* fraction_keys[] = {"data.train_fraction", "data.validation_fraction",
                                 "data.test_fraction"};
  for (std::size_t i = 0; i < 3; ++i) {
    r.emplace_back(fraction_keys[i],
                   Field{[i](ExperimentConfig& c, std::string_view k, std::string_view v) {
                           c.data.fractions[i] = parse_number<double>(k, v);
                         },
                         [i](const ExperimentConfig& c) { return format_double(c.data.fractions[i]); }});
  }
  r.emplace_back("data.src_maxlen", integer_field(&ExperimentConfig::data, &DataConfig::src_maxlen));
  r.emplace_back("data.tgt_maxlen", integer_field(&ExperimentConfig::data, &DataConfig::tgt_maxlen));
  r.emplace_back("data.min_count", integer_field(&ExperimentConfig::data, &DataConfig::min_count));
  r.emplace_back("data.batch_size", integer_field(&ExperimentConfig::data, &DataConfig::batch_size));
  r.emplace_back("data.validation_size",
                 integer_field(&ExperimentConfig::data, &DataConfig::validation_size));
  r.emplace_back("data.gazetteer", optional_path(&DataConfig::gazetteer, base));
  r.emplace_back("data.embeddings", optional_path(&DataConfig::embeddings, base));
  return r;
}

ExperimentConfig defaults() {
  ExperimentConfig cfg;
  cfg.model = models::ModelConfig::desk_scale(models::ModelKind::kTransformer, 0);
  cfg.optimizer.population = 20;
  cfg.optimizer.iterations = 100;
  cfg.optimizer.threads = 0;
  return cfg;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  std::map<std::string, std::string, std::less<>> values;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::kBadConfig, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!values.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      fail(ErrorKind::kBadConfig, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (end == text.size()) break;
  }

  ExperimentConfig cfg = defaults();
  // The preset replaces every model field, so it goes first.
  if (auto it = values.find("model.preset"); it != values.end()) {
    if (it->second == "full") {
      cfg.model = models::ModelConfig{};
    } else if (it->second != "desk") {
      bad_value(it->first, it->second, "desk or full");
    }
    values.erase(it);
  }

  const Registry registry = make_registry(base_dir);
  for (const auto& [key, value] : values) {
    auto it = std::find_if(registry.begin(), registry.end(),
                           [&](const auto& entry) { return entry.first == key; });
    if (it == registry.end()) fail(ErrorKind::kBadConfig, "unknown key '" + key + "'");
    it->second.set(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(corpus::read_file(path), path.parent_path());
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [key, field] : make_registry({})) {
    out += std::string(key) + " = " + field.get(cfg) + "\n";
  }
  return out;
}

}  // namespace slab::cli
