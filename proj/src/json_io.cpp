#include "itl/json_io.hpp"

#include "itl/constructions.hpp"
#include "itl/error.hpp"

namespace itl {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedSpec(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Nat nat_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw MalformedSpec(std::string("field \"") + key + "\" must be a natural number");
  return v.get<Nat>();
}

Nat nat_field_or(const Json& j, const char* key, Nat fallback) { return j.contains(key) ? nat_field(j, key) : fallback; }

std::vector<Nat> nat_list(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw MalformedSpec(std::string("field \"") + key + "\" must be an array");
  std::vector<Nat> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned()) throw MalformedSpec(std::string("field \"") + key + "\" must hold naturals");
    out.push_back(e.get<Nat>());
  }
  return out;
}

Rational rational_of(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw MalformedSpec("rationals are written as \"p/q\" strings");
}

std::vector<RInterval> intervals_of(const Json& v) {
  if (!v.is_array()) throw MalformedSpec("interval lists must be arrays");
  std::vector<RInterval> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) throw MalformedSpec("intervals are [lo, hi] pairs");
    out.push_back({rational_of(e[0]), rational_of(e[1])});
  }
  return out;
}

Json intervals_json(const std::vector<RInterval>& v) {
  Json out = Json::array();
  for (const auto& i : v) out.push_back({format_rational(i.lo), format_rational(i.hi)});
  return out;
}

Schedule schedule_of(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "squares") return Schedule::square();
    if (s == "pairs") return Schedule::pairs();
    if (s == "shift") return Schedule::shift();
    throw MalformedSpec("unknown schedule \"" + s + "\"");
  }
  if (v.is_object() && v.contains("arith")) return Schedule::arith(nat_field(v, "arith"));
  return Schedule{false, nat_field(v, "stride"), nat_field_or(v, "offset", 0)};
}

std::vector<WindowPattern> patterns_of(const Json& v) {
  if (!v.is_array()) throw MalformedSpec("window patterns must be arrays");
  std::vector<WindowPattern> out;
  for (const auto& p : v) {
    WindowPattern w;
    if (!p.is_array()) throw MalformedSpec("a window pattern is an array of labels");
    for (const auto& l : p) {
      if (!l.is_number_unsigned()) throw MalformedSpec("pattern labels must be naturals");
      w.push_back(l.get<std::uint32_t>());
    }
    out.push_back(std::move(w));
  }
  return out;
}

UpStream program_from_json(const Json& j) {
  const auto id = field(j, "id");
  if (!id.is_string()) throw MalformedSpec("program id must be a string");
  const auto name = id.get<std::string>();
  if (name == "reindex") return reindex_stream(stream_from_json(field(j, "of")), schedule_of(field(j, "schedule")));
  if (name == "scale") return scale_values(stream_from_json(field(j, "of")), nat_field(j, "factor"));
  if (name == "sparse_selector") return sparse_selector(stream_from_json(field(j, "of")));
  if (name == "double_count_bound") return double_count_bound(set_from_json(field(j, "of")), nat_field(j, "k"));
  if (name == "recursive_spreader") return recursive_spreader(stream_from_json(field(j, "of")), nat_field(j, "k"));
  if (name == "id_majorant")
    return id_majorant(set_from_json(field(j, "of")),
                       j.contains("schedule") ? schedule_of(j.at("schedule")) : Schedule::square());
  if (name == "nested_accelerator") return nested_accelerator(stream_from_json(field(j, "of")), nat_field_or(j, "lag", 1));
  if (name == "bd_forall_spreader") return bd_forall_spreader(stream_from_json(field(j, "of")));
  if (name == "sample_enumeration")
    return sample_enumeration(set_from_json(field(j, "of")), schedule_of(field(j, "schedule")));
  throw UnknownId("program \"" + name + "\"");
}

}  // namespace

std::string canonical(const Json& j) { return j.dump(); }

Json to_json(const UpStream& f) {
  if (const auto* e = f.as_ep())
    return Json{{"kind", "ep"}, {"start", e->start}, {"prefix", e->prefix}, {"cycle", e->cycle}};
  if (const auto* r = f.as_ramp())
    return Json{{"kind", "ramp"}, {"start", r->start}, {"alpha", r->alpha}, {"beta", r->beta}};
  return Json::parse(f.as_program()->descriptor);
}

Json to_json(const OmegaSet& x) {
  if (const auto* w = x.as_word())
    return Json{{"kind", "word"}, {"prefix", bits_to_string(w->prefix)}, {"cycle", bits_to_string(w->cycle)}};
  return Json{{"kind", "range"}, {"stream", to_json(*x.as_range())}};
}

Json to_json(const Partition& p) {
  return Json{{"boundaries", to_json(p.boundaries())},
              {"pattern", {{"prefix", p.prefix_patterns()}, {"cycle", p.cycle_patterns()}}},
              {"merge_prefix", p.merge_prefix()}};
}

Json to_json(const MeasurableSet& y) {
  return Json{{"prefix", intervals_json(y.prefix())},
              {"motif", intervals_json(y.motif())},
              {"p0", format_rational(y.p0())},
              {"L", format_rational(y.period())}};
}

Json to_json(const Verdict& v) {
  Json out{{"value", v.value == Tri::True ? "True" : v.value == Tri::False ? "False" : "Unknown"}};
  if (v.is_unknown()) out["horizon"] = v.horizon;
  out["evidence"] = v.evidence;
  if (!v.warnings.empty()) out["warnings"] = v.warnings;
  return out;
}

Json to_json(const CountProfile& p) {
  return Json{{"T", p.transient()}, {"P", p.period()}, {"head", p.head}, {"cycle", p.cycle}};
}

Json to_json(const MeasureProfile& p) {
  auto strs = [](const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(format_rational(r));
    return out;
  };
  return Json{{"T", p.transient()}, {"P", p.period()}, {"head", strs(p.head)}, {"cycle", strs(p.cycle)}};
}

Json to_json(const EpsSequence& e) {
  Json prefix = Json::array();
  for (const auto& r : e.prefix) prefix.push_back(format_rational(r));
  return Json{{"prefix", prefix}, {"scale", format_rational(e.scale)}, {"ratio", format_rational(e.ratio)}};
}

UpStream stream_from_json(const Json& j) {
  try {
    const auto& kind = field(j, "kind");
    if (kind == "ep") return UpStream::ep(nat_field(j, "start"), nat_list(j, "prefix"), nat_list(j, "cycle"));
    if (kind == "ramp") return UpStream::ramp(nat_field(j, "start"), nat_field(j, "alpha"), nat_field(j, "beta"));
    if (kind == "program") return program_from_json(j);
    throw MalformedSpec("unknown stream kind " + kind.dump());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(e.what());
  }
}

OmegaSet set_from_json(const Json& j) {
  try {
    const auto& kind = field(j, "kind");
    if (kind == "word") {
      const auto& p = field(j, "prefix");
      const auto& c = field(j, "cycle");
      if (!p.is_string() || !c.is_string()) throw MalformedSpec("word prefix and cycle are bit strings");
      return OmegaSet::word(p.get<std::string>(), c.get<std::string>());
    }
    if (kind == "range") return OmegaSet::range(stream_from_json(field(j, "stream")));
    throw MalformedSpec("unknown set kind " + kind.dump());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(e.what());
  }
}

Partition partition_from_json(const Json& j) {
  try {
    auto g = stream_from_json(field(j, "boundaries"));
    const Nat merge = nat_field_or(j, "merge_prefix", 0);
    if (!j.contains("pattern") || j.at("pattern").is_null()) return Partition::intervals(std::move(g), merge);
    const auto& pat = j.at("pattern");
    return Partition::make(std::move(g), pat.contains("prefix") ? patterns_of(pat.at("prefix")) : std::vector<WindowPattern>{},
                           patterns_of(field(pat, "cycle")), merge);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(e.what());
  }
}

MeasurableSet measurable_from_json(const Json& j) {
  try {
    return MeasurableSet::make(j.contains("prefix") ? intervals_of(j.at("prefix")) : std::vector<RInterval>{},
                               intervals_of(field(j, "motif")), rational_of(field(j, "p0")),
                               rational_of(field(j, "L")));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(e.what());
  }
}

EpsSequence eps_from_json(const Json& j) {
  try {
    EpsSequence e;
    if (j.contains("prefix"))
      for (const auto& v : j.at("prefix")) e.prefix.push_back(rational_of(v));
    e.scale = rational_of(field(j, "scale"));
    e.ratio = rational_of(field(j, "ratio"));
    e.validate();
    return e;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(e.what());
  }
}

}  // namespace itl
