// Copyright 2026 The LGCA Authors. All Rights Reserved.
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

#include "lgca/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lgca/error.hpp"

namespace lgca {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing "# ..." that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

class LineError {
 public:
  explicit LineError(int line) : line_(line) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

 private:
  int line_;
};

template <typename T>
T parse_number(std::string_view text, const LineError& err) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    err.fail("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::string parse_string(std::string_view text, const LineError& err) {
  if (text.size() < 2 || text.front() != '"' || text.back() != '"') {
    err.fail("expected a quoted string, got '" + std::string(text) + "'");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '\\' && i + 2 < text.size()) {
      ++i;
      switch (text[i]) {
        case 'n':
          out.push_back('\n');
          break;
        case 't':
          out.push_back('\t');
          break;
        default:
          out.push_back(text[i]);
      }
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::vector<double> parse_list(std::string_view text, const LineError& err) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    err.fail("expected a list like [1.0, 0.5]");
  }
  std::vector<double> out;
  std::string_view body = trim(text.substr(1, text.size() - 2));
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = trim(body.substr(0, comma));
    if (!item.empty()) {
      out.push_back(parse_number<double>(item, err));
    }
    if (comma == std::string_view::npos) {
      break;
    }
    body = body.substr(comma + 1);
  }
  return out;
}

std::string resolve(const std::string& path, const std::filesystem::path& base_dir) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) {
    return path;
  }
  return (base_dir / p).lexically_normal().string();
}

}  // namespace

void RunConfig::validate() const {
  try {
    lgca.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (out_size < 1) {
    throw ConfigError("out_size must be positive");
  }
  if (workers < 0) {
    throw ConfigError("workers must be non-negative");
  }
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineError err(line_no);
    const auto line = trim(strip_comment(raw));
    if (line.empty() || line.front() == '[') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      err.fail("expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));

    if (key == "n_crops") {
      cfg.lgca.crop.n_crops = parse_number<int>(value, err);
    } else if (key == "ratio_lo") {
      cfg.lgca.crop.ratio_lo = parse_number<double>(value, err);
    } else if (key == "ratio_hi") {
      cfg.lgca.crop.ratio_hi = parse_number<double>(value, err);
    } else if (key == "seed") {
      cfg.lgca.crop.seed = parse_number<std::uint64_t>(value, err);
    } else if (key == "tau") {
      cfg.lgca.tau = parse_number<double>(value, err);
    } else if (key == "temperature") {
      cfg.lgca.temperature = parse_number<double>(value, err);
    } else if (key == "schedule") {
      try {
        cfg.lgca.mode = parse_schedule_mode(parse_string(value, err));
      } catch (const InvalidParams& e) {
        err.fail(e.what());
      }
    } else if (key == "fixed_topk") {
      cfg.lgca.fixed_topk = parse_number<int>(value, err);
    } else if (key == "step_weights") {
      cfg.lgca.step_weights = parse_list(value, err);
    } else if (key == "encoder") {
      cfg.encoder = parse_string(value, err);
      if (cfg.encoder.starts_with("toy:")) {
        cfg.encoder = "toy:" + resolve(cfg.encoder.substr(4), base_dir);
      }
    } else if (key == "out_size") {
      cfg.out_size = parse_number<int>(value, err);
    } else if (key == "workers") {
      cfg.workers = parse_number<int>(value, err);
    } else if (key == "caption_template") {
      cfg.caption_template = parse_string(value, err);
    } else if (key == "descriptions") {
      cfg.descriptions = resolve(parse_string(value, err), base_dir);
    } else {
      err.fail("unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string render_caption(std::string_view tmpl, std::string_view label) {
  constexpr std::string_view kSlot = "{label}";
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto hit = tmpl.find(kSlot, pos);
    out += tmpl.substr(pos, hit == std::string_view::npos ? std::string_view::npos : hit - pos);
    if (hit == std::string_view::npos) {
      return out;
    }
    out += label;
    pos = hit + kSlot.size();
  }
}

}  // namespace lgca
