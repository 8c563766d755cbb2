#include "roboline/scenario.hpp"

#include "roboline/adversary.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace roboline {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// One raw `key = value` with its source line, before typing.
struct RawEntry {
  std::size_t line;
  std::string value;
};

struct LineParse {
  std::map<std::string, RawEntry> entries;
  std::vector<ScenarioError> errors;
};

LineParse split_lines(std::string_view text) {
  LineParse out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      out.errors.push_back({line_no, "", "expected `key = value`"});
      continue;
    }
    std::string key{trim(stripped.substr(0, eq))};
    std::string value{trim(stripped.substr(eq + 1))};
    if (key.empty()) {
      out.errors.push_back({line_no, "", "empty key"});
      continue;
    }
    if (out.entries.count(key)) {
      out.errors.push_back({line_no, key, "duplicate key"});
      continue;
    }
    out.entries.emplace(std::move(key), RawEntry{line_no, std::move(value)});
  }
  return out;
}

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// "text" -> text; anything else fails.
std::optional<std::string> unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  std::string_view body = s.substr(1, s.size() - 2);
  if (body.find('"') != std::string_view::npos) return std::nullopt;
  return std::string(body);
}

// ["a", "b"] -> {a, b}; [] -> {}.
std::optional<std::vector<std::string>> parse_array(std::string_view s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  std::string_view body = trim(s.substr(1, s.size() - 2));
  std::vector<std::string> out;
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = body.find(',', pos);
    std::string_view item =
        trim(body.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    auto text = unquote(item);
    if (!text) return std::nullopt;
    out.push_back(std::move(*text));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct DemonSpecParse {
  std::optional<DemonSpec> spec;
  std::string error;
};

bool param_allowed(const std::string& demon, const std::string& key) {
  if (key == "scale") return true;
  if (demon == "roundrobin") return key == "k";
  if (demon == "pull") return key == "delta" || key == "mode";
  if (demon == "split") return key == "delta" || key == "k";
  return false;
}

DemonSpecParse parse_demon_spec(const std::string& text) {
  DemonSpec spec;
  std::string params_text;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    spec.name = text.substr(0, colon);
    params_text = text.substr(colon + 1);
  } else {
    spec.name = text;
  }

  if (spec.name != "fsync" && spec.name != "roundrobin" && spec.name != "pull" &&
      spec.name != "split") {
    return {std::nullopt, "unknown demon \"" + spec.name + "\""};
  }

  std::stringstream ss(params_text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    std::string_view p = trim(piece);
    if (p.empty()) return {std::nullopt, "empty demon parameter"};
    std::size_t eq = p.find('=');
    if (eq == std::string_view::npos) {
      return {std::nullopt, "demon parameter needs key=value: \"" + std::string(p) + "\""};
    }
    std::string key{trim(p.substr(0, eq))};
    std::string value{trim(p.substr(eq + 1))};
    if (!param_allowed(spec.name, key)) {
      return {std::nullopt, "demon \"" + spec.name + "\" does not take parameter \"" + key + "\""};
    }
    if (spec.params.count(key)) return {std::nullopt, "duplicate demon parameter \"" + key + "\""};

    if (key == "k") {
      auto v = parse_int(value);
      if (!v || *v < 1) return {std::nullopt, "demon parameter k must be an integer >= 1"};
      value = std::to_string(*v);
    } else if (key == "mode") {
      if (value != "alt" && value != "chase") {
        return {std::nullopt, "demon parameter mode must be alt or chase"};
      }
    } else {  // delta, scale
      auto r = Rational::parse(value);
      if (!r) return {std::nullopt, "demon parameter " + key + " is not a rational"};
      if (key == "delta" && r->sign() <= 0) {
        return {std::nullopt, "demon parameter delta must be positive"};
      }
      if (key == "scale" && r->is_zero()) {
        return {std::nullopt, "demon parameter scale must be nonzero"};
      }
      value = r->str();
    }
    spec.params.emplace(std::move(key), std::move(value));
  }
  return {spec, ""};
}

Rational demon_param_rational(const DemonSpec& spec, const std::string& key,
                              const Rational& fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  return Rational(it->second);
}

std::uint64_t demon_param_int(const DemonSpec& spec, const std::string& key,
                              std::uint64_t fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  return static_cast<std::uint64_t>(std::stoll(it->second));
}

}  // namespace

std::string DemonSpec::canonical() const {
  std::string out = name;
  bool first = true;
  for (const auto& [key, value] : params) {  // std::map: alphabetical
    out += first ? ':' : ',';
    first = false;
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

ScenarioParseResult parse_scenario(std::string_view text) {
  LineParse lines = split_lines(text);
  ScenarioParseResult result;
  result.errors = std::move(lines.errors);
  auto fail = [&](std::size_t line, std::string field, std::string message) {
    result.errors.push_back({line, std::move(field), std::move(message)});
  };

  static const std::vector<std::string> known_keys = {
      "good_count", "byz_count", "good",    "byz", "robogram",
      "demon",      "epsilon",   "horizon", "hold_window", "seed"};
  for (const auto& [key, entry] : lines.entries) {
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
      fail(entry.line, key, "unknown key");
    }
  }

  auto entry = [&](const char* key) -> const RawEntry* {
    auto it = lines.entries.find(key);
    return it == lines.entries.end() ? nullptr : &it->second;
  };
  auto require = [&](const char* key) -> const RawEntry* {
    const RawEntry* e = entry(key);
    if (!e) fail(0, key, "missing required key");
    return e;
  };

  Scenario s;

  // counts
  bool counts_ok = true;
  if (const RawEntry* e = require("good_count")) {
    auto v = parse_int(e->value);
    if (!v || *v < 1) {
      fail(e->line, "good_count", "must be an integer >= 1");
      counts_ok = false;
    } else {
      s.space.good_count = static_cast<std::size_t>(*v);
    }
  } else {
    counts_ok = false;
  }
  if (const RawEntry* e = require("byz_count")) {
    auto v = parse_int(e->value);
    if (!v || *v < 0) {
      fail(e->line, "byz_count", "must be an integer >= 0");
      counts_ok = false;
    } else {
      s.space.byz_count = static_cast<std::size_t>(*v);
    }
  } else {
    counts_ok = false;
  }

  // placements
  auto parse_locations = [&](const RawEntry& e, const char* field,
                             std::vector<Location>& out) {
    auto items = parse_array(e.value);
    if (!items) {
      fail(e.line, field, "expected an array of quoted rationals");
      return;
    }
    for (const std::string& item : *items) {
      auto r = Rational::parse(item);
      if (!r) {
        fail(e.line, field, "bad rational \"" + item + "\"");
        continue;
      }
      out.push_back(*r);
    }
  };
  std::size_t good_errors_before = result.errors.size();
  if (const RawEntry* e = require("good")) {
    parse_locations(*e, "good", s.good);
    if (result.errors.size() == good_errors_before && counts_ok &&
        s.good.size() != s.space.good_count) {
      fail(e->line, "good", "expected " + std::to_string(s.space.good_count) +
                                " locations, got " + std::to_string(s.good.size()));
    }
  }
  const RawEntry* byz_entry = entry("byz");
  if (byz_entry) parse_locations(*byz_entry, "byz", s.byz);

  // names
  if (const RawEntry* e = require("robogram")) {
    auto name = unquote(e->value);
    if (!name) {
      fail(e->line, "robogram", "expected a quoted name");
    } else if (!find_robogram(*name)) {
      fail(e->line, "robogram", "unknown robogram \"" + *name + "\"");
    } else {
      s.robogram = *name;
    }
  }
  bool demon_ok = false;
  if (const RawEntry* e = require("demon")) {
    auto text_value = unquote(e->value);
    if (!text_value) {
      fail(e->line, "demon", "expected a quoted demon spec");
    } else {
      DemonSpecParse parsed = parse_demon_spec(*text_value);
      if (!parsed.spec) {
        fail(e->line, "demon", parsed.error);
      } else {
        s.demon = *parsed.spec;
        demon_ok = true;
      }
    }
  }

  // query
  if (const RawEntry* e = entry("epsilon")) {
    auto quoted = unquote(e->value);
    std::optional<Rational> r;
    if (quoted) r = Rational::parse(*quoted);
    if (!r) {
      fail(e->line, "epsilon", "expected a quoted rational");
    } else if (r->sign() <= 0) {
      fail(e->line, "epsilon", "must be positive");
    } else {
      s.query.epsilon = *r;
    }
  }
  if (const RawEntry* e = entry("horizon")) {
    auto v = parse_int(e->value);
    if (!v || *v < 1) {
      fail(e->line, "horizon", "must be an integer >= 1");
    } else {
      s.query.horizon = static_cast<std::uint64_t>(*v);
    }
  }
  if (const RawEntry* e = entry("hold_window")) {
    auto v = parse_int(e->value);
    if (!v || *v < 1) {
      fail(e->line, "hold_window", "must be an integer >= 1");
    } else {
      s.query.hold_window = static_cast<std::uint64_t>(*v);
    }
  }
  if (const RawEntry* e = entry("seed")) {
    auto v = parse_int(e->value);
    if (!v || *v < 0) {
      fail(e->line, "seed", "must be an integer >= 0");
    } else {
      s.seed = static_cast<std::uint64_t>(*v);
    }
  }

  // cross-field rules: pinned demons need explicit byzantine placements,
  // adversary demons place byzantine robots themselves.
  if (demon_ok && counts_ok) {
    bool pinned = s.demon.name == "fsync" || s.demon.name == "roundrobin";
    if (pinned && s.space.byz_count > 0 && !byz_entry) {
      fail(0, "byz", "demon \"" + s.demon.name + "\" needs pinned byzantine placements");
    }
    if (byz_entry && s.byz.size() != s.space.byz_count) {
      fail(byz_entry->line, "byz",
           "expected " + std::to_string(s.space.byz_count) + " locations, got " +
               std::to_string(s.byz.size()));
    }
  }

  if (result.errors.empty()) result.scenario = std::move(s);
  return result;
}

std::string serialize_scenario(const Scenario& s) {
  auto quote = [](const std::string& t) { return '"' + t + '"'; };
  auto array = [&](const std::vector<Location>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += quote(xs[i].str());
    }
    return out + "]";
  };
  std::ostringstream os;
  os << "good_count = " << s.space.good_count << '\n';
  os << "byz_count = " << s.space.byz_count << '\n';
  os << "good = " << array(s.good) << '\n';
  if (!s.byz.empty()) os << "byz = " << array(s.byz) << '\n';
  os << "robogram = " << quote(s.robogram) << '\n';
  os << "demon = " << quote(s.demon.canonical()) << '\n';
  os << "epsilon = " << quote(s.query.epsilon.str()) << '\n';
  os << "horizon = " << s.query.horizon << '\n';
  os << "hold_window = " << s.query.hold_window << '\n';
  os << "seed = " << s.seed << '\n';
  return os.str();
}

std::unique_ptr<Demon> build_demon(const Scenario& s) {
  const DemonSpec& d = s.demon;
  Rational scale = demon_param_rational(d, "scale", 1);
  if (d.name == "fsync") {
    return fsync_demon(s.byz, scale);
  }
  if (d.name == "roundrobin") {
    return round_robin_demon(s.space.good_count, demon_param_int(d, "k", 1), s.byz, scale);
  }
  if (d.name == "pull") {
    PullAdversaryConfig config;
    config.delta = demon_param_rational(d, "delta", 100);
    config.scale = scale;
    auto it = d.params.find("mode");
    config.mode = (it != d.params.end() && it->second == "chase") ? PullMode::ChaseEscape
                                                                  : PullMode::AlternatingSides;
    return adversary_pull(config, s.space);
  }
  if (d.name == "split") {
    SplitAdversaryConfig config;
    config.k_bound = demon_param_int(d, "k", 2);
    config.delta = demon_param_rational(d, "delta", 100);
    config.scale = scale;
    return adversary_split(config, s.space);
  }
  throw std::invalid_argument("build_demon: unknown demon \"" + d.name + "\"");
}

Robogram resolve_robogram(const Scenario& s) {
  auto r = find_robogram(s.robogram);
  if (!r) throw std::invalid_argument("unknown robogram \"" + s.robogram + "\"");
  return *r;
}

}  // namespace roboline
