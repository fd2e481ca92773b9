#include "patternforge/families.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "patternforge/assets.hpp"

namespace patternforge {

namespace {

void require_order(int n, int lo, const char* family) {
  if (n < lo || n > kMaxPatternOrder)
    throw std::invalid_argument(std::string("family ") + family + ": order " + std::to_string(n) + " out of range");
}

void add_path(ZeroPattern& p) {
  for (int i = 1; i < p.order(); ++i) {
    p.set(i, i + 1);
    p.set(i + 1, i);
  }
}

const std::map<std::string, std::vector<NamedPattern>, std::less<>>& groups() {
  static std::map<std::string, std::vector<NamedPattern>, std::less<>> table;
  static std::once_flag once;
  std::call_once(once, [] {
    auto doc = nlohmann::json::parse(assets::figures_json());
    for (const auto& [group, items] : doc.at("groups").items()) {
      auto& out = table[group];
      for (const auto& item : items) {
        const int n = item.at("n").get<int>();
        std::vector<Arc> arcs;
        for (const auto& rc : item.at("support")) arcs.push_back({rc.at(0).get<int>(), rc.at(1).get<int>()});
        out.push_back({item.at("name").get<std::string>(), ZeroPattern(n, arcs)});
      }
    }
  });
  return table;
}

int to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number in pattern name");
  return v;
}

}  // namespace

ZeroPattern companion_pattern(int n) {
  require_order(n, 1, "C");
  ZeroPattern p(n);
  for (int k = 1; k <= n; ++k) p.set(k, 1);
  for (int k = 1; k < n; ++k) p.set(k, k + 1);
  return p;
}

ZeroPattern an_pattern(int n) {
  require_order(n, 2, "A");
  ZeroPattern p(n);
  for (int k = 1; k < n; ++k) {
    p.set(k, k);
    p.set(k, k + 1);
  }
  p.set(n, 1);
  return p;
}

ZeroPattern path_pattern(int n, int alpha) {
  require_order(n, 1, "P");
  if (alpha < 1 || alpha > n) throw std::invalid_argument("family P: loop position out of range");
  ZeroPattern p(n);
  add_path(p);
  p.set(alpha, alpha);
  return p;
}

ZeroPattern t_pattern(int n) {
  require_order(n, 2, "T");
  ZeroPattern p(n);
  add_path(p);
  p.set(1, 1);
  p.set(n, n);
  return p;
}

ZeroPattern w_pattern(int n) {
  require_order(n, 3, "W");
  ZeroPattern p(n);
  add_path(p);
  p.set(1, 1);
  p.set(n - 1, n - 1);
  return p;
}

std::vector<NamedPattern> figure_group(std::string_view group) {
  const auto& g = groups();
  auto it = g.find(group);
  if (it == g.end()) throw std::invalid_argument("unknown pattern group: " + std::string(group));
  return it->second;
}

ZeroPattern builtin_pattern(std::string_view family, int n, int param) {
  if (family == "C") return companion_pattern(n);
  if (family == "A") return an_pattern(n);
  if (family == "P") return path_pattern(n, param);
  if (family == "T") return t_pattern(n);
  if (family == "W") return w_pattern(n);
  if (family == "Y431") return figure_group("Y").at(0).pattern;
  static const std::map<std::string, std::string, std::less<>> group_of = {
      {"figureC4", "C4"}, {"figureY", "Y"},     {"figureD", "D"}, {"notIAP", "notIAP"},
      {"J", "J"},         {"SAP3", "SAP3"},     {"RIAP3", "RIAP3"}, {"H", "H"}};
  auto it = group_of.find(family);
  if (it == group_of.end()) throw std::invalid_argument("unknown pattern family: " + std::string(family));
  auto items = figure_group(it->second);
  const int index = (family == "figureD" && param == 0) ? 1 : param;
  if (index < 1 || index > static_cast<int>(items.size()))
    throw std::invalid_argument("family " + std::string(family) + ": index " + std::to_string(param) + " out of range");
  const auto& p = items[static_cast<std::size_t>(index - 1)].pattern;
  if (n != 0 && n != p.order())
    throw std::invalid_argument("family " + std::string(family) + " has order " + std::to_string(p.order()));
  return p;
}

ZeroPattern pattern_from_name(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty pattern name");
  for (const auto& [group, items] : groups())
    for (const auto& item : items)
      if (item.name == name) return item.pattern;
  if (name == "Y431") return builtin_pattern("Y431");
  const char head = name.front();
  std::string_view rest = name.substr(1);
  if (head == 'P') {
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("path pattern name needs n,alpha");
    return path_pattern(to_int(rest.substr(0, comma)), to_int(rest.substr(comma + 1)));
  }
  if (head == 'C' || head == 'A' || head == 'T' || head == 'W') return builtin_pattern(std::string_view(&head, 1), to_int(rest));
  throw std::invalid_argument("unknown pattern name: " + std::string(name));
}

}  // namespace patternforge
