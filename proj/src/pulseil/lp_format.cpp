// Copyright 2026 The pulseil Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulseil/lp_format.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace pulseil {

namespace {

std::string h_name(std::size_t i, std::size_t j, int k) {
  return "h_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(k);
}

std::string h_name(std::size_t i, std::size_t j) {
  return "h_" + std::to_string(i) + "_" + std::to_string(j);
}

std::string f_name(std::size_t j) { return "f_" + std::to_string(j); }

struct LookView {
  const IpInstance& inst;
  std::uint32_t group(std::size_t j) const { return inst.looks()[j].group; }
  const IpCell* cell(std::size_t i, std::size_t j) const {
    return inst.cell(static_cast<std::uint32_t>(i), group(j));
  }
};

}  // namespace

LpModel build_lp(const IpInstance& inst, bool relax) {
  const std::size_t nt = inst.task_count();
  const std::size_t nl = inst.look_count();
  const int n = inst.max_interleave();
  const int big_m = inst.big_m();
  const LookView view{inst};

  LpModel m;
  {
    std::ostringstream os;
    os << "pulseil-lp v1 mode=" << to_string(inst.mode())
       << " form=" << (relax ? "sscfl" : "full") << " tasks=" << nt
       << " looks=" << nl << " slots=" << n << " big_m=" << big_m;
    m.comment = os.str();
  }
  for (std::size_t j = 0; j < nl; ++j) {
    m.objective.push_back({inst.groups()[view.group(j)].dwell, f_name(j)});
  }

  // C1: capacity and look usage.
  for (std::size_t j = 0; j < nl; ++j) {
    LpRow row{"c1_" + std::to_string(j), {}, "<=", 0.0};
    for (std::size_t i = 0; i < nt; ++i) {
      if (relax) {
        row.terms.push_back({1.0, h_name(i, j)});
      } else {
        for (int k = 1; k <= n; ++k) row.terms.push_back({1.0, h_name(i, j, k)});
      }
    }
    row.terms.push_back({-static_cast<double>(n), f_name(j)});
    m.rows.push_back(std::move(row));
  }
  // C2: every task exactly once.
  for (std::size_t i = 0; i < nt; ++i) {
    LpRow row{"c2_" + std::to_string(i), {}, "=", 1.0};
    for (std::size_t j = 0; j < nl; ++j) {
      if (relax) {
        row.terms.push_back({1.0, h_name(i, j)});
      } else {
        for (int k = 1; k <= n; ++k) row.terms.push_back({1.0, h_name(i, j, k)});
      }
    }
    m.rows.push_back(std::move(row));
  }
  if (!relax) {
    // C3: one task per slot.
    for (std::size_t j = 0; j < nl; ++j) {
      for (int k = 1; k <= n; ++k) {
        LpRow row{"c3_" + std::to_string(j) + "_" + std::to_string(k), {}, "<=",
                  1.0};
        for (std::size_t i = 0; i < nt; ++i) {
          row.terms.push_back({1.0, h_name(i, j, k)});
        }
        m.rows.push_back(std::move(row));
      }
    }
    // C4: slots fill from the front.
    for (std::size_t j = 0; j < nl; ++j) {
      for (int k = 1; k < n; ++k) {
        LpRow row{"c4_" + std::to_string(j) + "_" + std::to_string(k), {}, ">=",
                  0.0};
        for (std::size_t i = 0; i < nt; ++i) {
          row.terms.push_back({1.0, h_name(i, j, k)});
          row.terms.push_back({-1.0, h_name(i, j, k + 1)});
        }
        m.rows.push_back(std::move(row));
      }
    }
  }
  // C5: availability.
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      const double av = view.cell(i, j) != nullptr ? 1.0 : 0.0;
      LpRow row{"c5_" + std::to_string(i) + "_" + std::to_string(j), {}, "<=",
                av};
      if (relax) {
        row.terms.push_back({1.0, h_name(i, j)});
      } else {
        for (int k = 1; k <= n; ++k) row.terms.push_back({1.0, h_name(i, j, k)});
      }
      m.rows.push_back(std::move(row));
    }
  }
  if (!relax) {
    // C6: sum_i (k - A_r) h_ijk <= 0.
    for (std::size_t j = 0; j < nl; ++j) {
      for (int k = 1; k <= n; ++k) {
        LpRow row{"c6_" + std::to_string(j) + "_" + std::to_string(k), {}, "<=",
                  0.0};
        for (std::size_t i = 0; i < nt; ++i) {
          const IpCell* c = view.cell(i, j);
          const double coef = k - (c != nullptr ? c->right : 0);
          if (coef != 0.0) row.terms.push_back({coef, h_name(i, j, k)});
        }
        if (!row.terms.empty()) m.rows.push_back(std::move(row));
      }
    }
    // C7: look size <= k + A_l for the task at k, relaxed by L when empty.
    for (std::size_t j = 0; j < nl; ++j) {
      for (int k = 1; k <= n; ++k) {
        LpRow row{"c7_" + std::to_string(j) + "_" + std::to_string(k), {}, "<=",
                  static_cast<double>(big_m)};
        for (std::size_t i = 0; i < nt; ++i) {
          const IpCell* c = view.cell(i, j);
          const int left = c != nullptr ? c->left : 0;
          for (int kk = 1; kk <= n; ++kk) {
            double coef = 1.0;
            if (kk == k) coef += big_m - (k + left);
            if (coef != 0.0) row.terms.push_back({coef, h_name(i, j, kk)});
          }
        }
        m.rows.push_back(std::move(row));
      }
    }
  }
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      if (relax) {
        m.binaries.push_back(h_name(i, j));
      } else {
        for (int k = 1; k <= n; ++k) m.binaries.push_back(h_name(i, j, k));
      }
    }
  }
  for (std::size_t j = 0; j < nl; ++j) m.binaries.push_back(f_name(j));
  return m;
}

namespace {

void emit_terms(std::string& out, const std::vector<LpTerm>& terms) {
  bool first = true;
  for (const LpTerm& t : terms) {
    const bool negative = t.coef < 0.0;
    if (first) {
      if (negative) out += "- ";
    } else {
      out += negative ? " - " : " + ";
    }
    const double mag = std::fabs(t.coef);
    if (mag != 1.0) {
      out += format_double(mag);
      out += ' ';
    }
    out += t.var;
    first = false;
  }
  if (first) out += "0";
}

}  // namespace

std::string emit_lp(const LpModel& m) {
  std::string out;
  out += "\\ " + m.comment + "\n";
  out += "Minimize\n obj: ";
  emit_terms(out, m.objective);
  out += "\nSubject To\n";
  for (const LpRow& r : m.rows) {
    out += " " + r.name + ": ";
    emit_terms(out, r.terms);
    out += " " + r.sense + " " + format_double(r.rhs) + "\n";
  }
  out += "Binary\n";
  for (const std::string& b : m.binaries) out += " " + b + "\n";
  out += "End\n";
  return out;
}

namespace {

bool parse_number(std::string_view tok, double& v) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void bad(std::size_t line, const std::string& why) {
  throw InvalidInput("lp parse: line " + std::to_string(line) + ": " + why);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Consumes terms from toks[pos..end).
std::vector<LpTerm> parse_terms(const std::vector<std::string_view>& toks,
                                std::size_t pos, std::size_t end,
                                std::size_t line) {
  std::vector<LpTerm> terms;
  if (end - pos == 1 && toks[pos] == "0") return terms;
  while (pos < end) {
    double sign = 1.0;
    if (toks[pos] == "+" || toks[pos] == "-") {
      sign = toks[pos] == "-" ? -1.0 : 1.0;
      ++pos;
    } else if (!terms.empty()) {
      bad(line, "missing operator between terms");
    }
    if (pos >= end) bad(line, "dangling operator");
    double coef = 1.0;
    if (parse_number(toks[pos], coef)) {
      ++pos;
      if (pos >= end) bad(line, "coefficient without variable");
    }
    terms.push_back({sign * coef, std::string(toks[pos])});
    ++pos;
  }
  return terms;
}

}  // namespace

LpModel parse_lp(std::string_view text) {
  LpModel m;
  enum class Section { kHeader, kObjective, kRows, kBinary, kDone };
  Section sec = Section::kHeader;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool saw_comment = false;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '\\') {
      if (!saw_comment && sec == Section::kHeader) {
        std::string_view c = line.substr(1);
        if (!c.empty() && c[0] == ' ') c.remove_prefix(1);
        m.comment = std::string(c);
        saw_comment = true;
      }
      continue;
    }
    if (line == "Minimize") {
      sec = Section::kObjective;
      continue;
    }
    if (line == "Subject To") {
      sec = Section::kRows;
      continue;
    }
    if (line == "Binary") {
      sec = Section::kBinary;
      continue;
    }
    if (line == "End") {
      sec = Section::kDone;
      continue;
    }
    const auto toks = split(line);
    if (toks.empty()) continue;
    switch (sec) {
      case Section::kObjective: {
        if (toks[0] != "obj:") bad(line_no, "objective must be named obj");
        m.objective = parse_terms(toks, 1, toks.size(), line_no);
        break;
      }
      case Section::kRows: {
        if (toks.size() < 4 || toks[0].back() != ':') bad(line_no, "bad row");
        LpRow row;
        row.name = std::string(toks[0].substr(0, toks[0].size() - 1));
        const std::string_view sense = toks[toks.size() - 2];
        if (sense != "<=" && sense != ">=" && sense != "=") {
          bad(line_no, "bad sense");
        }
        row.sense = std::string(sense);
        if (!parse_number(toks.back(), row.rhs)) bad(line_no, "bad rhs");
        row.terms = parse_terms(toks, 1, toks.size() - 2, line_no);
        m.rows.push_back(std::move(row));
        break;
      }
      case Section::kBinary:
        for (auto t : toks) m.binaries.emplace_back(t);
        break;
      default:
        bad(line_no, "content outside a section");
    }
  }
  if (sec != Section::kDone) throw InvalidInput("lp parse: missing End");
  return m;
}

}  // namespace pulseil
