#pragma once

// Hand-built datasets shared by the unit and acceptance suites.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "attentionflow/store.hpp"

namespace attnflow::testing {

inline DateIndex day(const char* iso) { return DateIndex::parse(iso); }

inline NodeRecord node(std::string id, std::string name, DateIndex start, std::vector<double> values,
                       std::vector<std::string> categories = {}) {
  NodeRecord n;
  n.id = std::move(id);
  n.name = std::move(name);
  n.series = AttentionSeries(start, std::move(values));
  n.categories = std::move(categories);
  return n;
}

inline NodeRecord flat_node(std::string id, DateIndex start, int days, double value,
                            std::vector<std::string> categories = {}) {
  std::string name = id;
  return node(std::move(id), std::move(name), start, std::vector<double>(static_cast<std::size_t>(days), value),
              std::move(categories));
}

inline DynamicEdge edge(std::string s, std::string t, DateIndex start, std::vector<double> values) {
  return {std::move(s), std::move(t), AttentionSeries(start, std::move(values))};
}

inline DynamicEdge flat_edge(std::string s, std::string t, DateIndex start, int days, double value) {
  return {std::move(s), std::move(t), AttentionSeries::constant(start, days, value)};
}

inline std::vector<double> daily(DateIndex from, DateIndex to, auto&& fn) {
  std::vector<double> v;
  for (DateIndex d = from; d <= to; ++d) v.push_back(fn(d));
  return v;
}

/// Star around "ego": ego attention is 100 over a 10-day window and three
/// incoming edges carry total flux 2, 0.5 and 10.
inline DatasetStore star_store() {
  const DateIndex start = day("2020-01-01");
  DatasetStore s;
  s.add_node(flat_node("ego", start, 10, 10.0));
  s.add_node(flat_node("a", start, 10, 1.0));
  s.add_node(flat_node("b", start, 10, 1.0));
  s.add_node(flat_node("c", start, 10, 1.0));
  s.add_edge(flat_edge("a", "ego", start, 10, 0.2));
  s.add_edge(flat_edge("b", "ego", start, 10, 0.05));
  s.add_edge(flat_edge("c", "ego", start, 10, 1.0));
  s.seal();
  return s;
}

/// An ego shaped like a long-lived hit song with two attention spikes: one
/// the day after an awards ceremony, one right after a related new release
/// ("hello"). "twin" mirrors the ego with edges both ways; "hello" is heavily
/// front-loaded. The ego also has a self-loop.
inline DatasetStore hit_song_store() {
  const DateIndex ego_start = day("2010-11-30");
  const DateIndex end = day("2017-12-31");
  const DateIndex awards = day("2012-02-12");
  const DateIndex release = day("2015-10-23");

  auto ego_value = [&](DateIndex d) {
    double v = 20000.0;
    if (d > awards) v += 400000.0 * std::exp(-(d - awards - 1) / 6.0);
    if (d > release) v += 300000.0 * std::exp(-(d - release - 1) / 10.0);
    return std::round(v);
  };
  auto hello_value = [&](DateIndex d) { return std::round(2.0e6 * std::exp(-(d - release) / 40.0) + 5000.0); };

  DatasetStore s;
  s.add_node(node("rolling", "Rolling in the Deep", ego_start, daily(ego_start, end, ego_value), {"pop", "soul"}));
  s.add_node(node("hello", "Adele - Hello", release, daily(release, end, hello_value), {"pop"}));
  s.add_node(node("twin", "Someone Like You", ego_start,
                  daily(ego_start, end, [&](DateIndex d) { return std::round(0.9 * ego_value(d)); }), {"pop", "ballad"}));
  s.add_node(flat_node("quiet", day("2013-01-01"), 1826, 50.0, {"rock"}));

  s.add_edge(edge("hello", "rolling", release, daily(release, end, [&](DateIndex d) { return 0.2 * hello_value(d); })));
  s.add_edge(edge("rolling", "twin", ego_start, daily(ego_start, end, [&](DateIndex d) { return 0.05 * ego_value(d); })));
  s.add_edge(edge("twin", "rolling", ego_start, daily(ego_start, end, [&](DateIndex d) { return 0.05 * ego_value(d); })));
  s.add_edge(flat_edge("quiet", "rolling", day("2013-01-01"), 1826, 0.5));
  s.add_edge(flat_edge("rolling", "rolling", ego_start, end - ego_start + 1, 300.0));

  s.add_event({"rolling", awards, "54th Annual Music Awards", std::string("https://example.org/awards")});
  s.add_event({"", release, "Release: Hello", std::nullopt});
  s.seal();
  return s;
}

/// Ego with seven alters over 2014-2015, five of which carry more than 1% of
/// the ego's windowed attention.
inline DatasetStore five_alter_store() {
  const DateIndex start = day("2014-01-01");
  const int days = 730;
  DatasetStore s;
  s.add_node(flat_node("ego", start, days, 1000.0, {"pop"}));
  const double fractions[] = {0.05, 0.03, 0.02, 0.015, 0.012, 0.009, 0.002};
  const char* cats[] = {"pop", "rock", "pop", "hip hop", "", "rock", "jazz"};
  for (int i = 0; i < 7; ++i) {
    const std::string id = "alter" + std::to_string(i);
    std::vector<std::string> c;
    if (cats[i][0] != '\0') c.push_back(cats[i]);
    s.add_node(flat_node(id, start + 30 * i, days - 30 * i, 200.0 + 100.0 * i, c));
    const double per_day = fractions[i] * 1000.0 * days / (days - 30 * i);
    s.add_edge(flat_edge(id, "ego", start + 30 * i, days - 30 * i, per_day));
  }
  s.seal();
  return s;
}

}  // namespace attnflow::testing
