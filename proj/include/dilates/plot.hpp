#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "dilates/core.hpp"

namespace dilates {

/// Circular diagram of Z_n: one tick per residue, witness elements as
/// filled dots, residue 0 at the top, increasing clockwise.
inline std::string svg_witness_diagram(std::int64_t n, const std::vector<std::int64_t>& elements,
                                       const std::string& title = {}) {
  if (n < 1) throw Error("modulus must be positive");
  const double size = 480, c = size / 2, r = 180;
  std::set<std::int64_t> marked;
  for (auto e : elements) marked.insert(floor_mod(e, n));

  std::string out;
  char buf[256];
  auto add = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  add("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n", size,
      size, size, size);
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    std::string esc;
    for (char ch : title) {
      if (ch == '<') esc += "&lt;";
      else if (ch == '>') esc += "&gt;";
      else if (ch == '&') esc += "&amp;";
      else esc += ch;
    }
    add("  <text x=\"%.0f\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">", c);
    out += esc + "</text>\n";
  }
  add("  <circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n", c, c, r);
  for (std::int64_t k = 0; k < n; ++k) {
    double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    double x = c + r * std::sin(t), y = c - r * std::cos(t);
    if (marked.count(k)) {
      add("  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"black\"/>\n", x, y);
      add("  <text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">%lld</text>\n",
          c + (r + 16) * std::sin(t), c - (r + 16) * std::cos(t) + 3, static_cast<long long>(k));
    } else {
      add("  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"#aaa\"/>\n", x, y);
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dilates
