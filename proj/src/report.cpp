#include "prefal/report.hpp"

namespace prefal {

std::string verdict_string(const HierarchyVerdict& v) {
  switch (v.kind) {
    case HierarchyVerdict::Kind::InPInfinityCertified:
      return "InPInfinity";
    case HierarchyVerdict::Kind::NotInP:
      return "NotInP(" + std::to_string(v.n) + ")";
    case HierarchyVerdict::Kind::BoundedMember:
      return "BoundedMember(" + std::to_string(v.n) + ")";
    case HierarchyVerdict::Kind::Unresolved:
      return "Unresolved";
  }
  return "?";
}

std::string sturmian_verdict_string(const SturmianVerdict& v) {
  if (v.in_p_infinity) return "InPInfinity";
  return "NotInP(" + std::to_string(v.not_in_p_n) + ")";
}

namespace {

json words_json(const std::vector<FiniteWord>& words,
                std::string_view glyphs) {
  json out = json::array();
  for (const auto& w : words) out.push_back(render(w, glyphs));
  return out;
}

}  // namespace

json analysis_json(const UPAnalysis& a, std::string_view glyphs) {
  json out;
  out["up_set"] = words_json(a.up_set, glyphs);
  out["N"] = a.N;
  out["up_prime"] = words_json(a.up_prime, glyphs);
  out["phi"] = words_json(a.phi.codewords, glyphs);
  out["completeness"] =
      a.certified() ? "certified"
                    : "bounded(" + std::to_string(a.scan_bound) + ")";
  if (a.certified()) out["certificate"] = a.certificate;
  if (a.stall_position) out["stall_position"] = *a.stall_position;
  return out;
}

json chain_json(const DerivedChain& chain) {
  json out;
  json levels = json::array();
  for (const auto& level : chain.levels) {
    json lj;
    lj["word"] = level.word.describe();
    if (level.analysis)
      lj["analysis"] =
          analysis_json(*level.analysis, level.word.glyphs());
    if (level.refutes_p1) lj["refutes_p1"] = level.note;
    levels.push_back(std::move(lj));
  }
  out["levels"] = std::move(levels);
  json nu = json::array();
  for (const auto& entry : chain.nu) {
    json ej;
    ej["value"] = entry.value;
    ej["exact"] = entry.exact;
    nu.push_back(std::move(ej));
  }
  out["nu"] = std::move(nu);
  if (chain.cycle) {
    out["cycle"] = json::array({chain.cycle->first, chain.cycle->second});
    out["cycle_kind"] = chain.cycle_kind;
  }
  if (chain.refuted_level) {
    out["refuted_level"] = *chain.refuted_level;
    out["refutation"] = chain.refutation;
  }
  if (chain.stalled_level) {
    out["stalled_level"] = *chain.stalled_level;
    out["stall_note"] = chain.stall_note;
  }
  return out;
}

json frontier_json(const FrontierReport& report) {
  json out;
  out["n"] = report.n;
  out["window"] = report.window;
  out["note"] = "bounded evidence, not a proof";
  json colors;
  for (const auto& [color, f] : report.per_color) {
    json cj;
    constexpr std::size_t kFullList = 256;
    if (f.reach.size() <= kFullList)
      cj["reach"] = f.reach;
    else {
      cj["reach_size"] = f.reach.size();
      cj["reach_last"] = f.last;
    }
    if (f.sustained) cj["sustained"] = *f.sustained;
    cj["verdict"] = f.dead ? "FrontierDead(" + std::to_string(f.dead_at) + ")"
                           : "FrontierAlive";
    colors[color] = std::move(cj);
  }
  out["colors"] = std::move(colors);
  return out;
}

json word_report(const std::string& spec, const HierarchyResult& result,
                 const ChainOptions& opt,
                 const std::optional<SturmianVerdict>& sturm) {
  json out;
  out["schema"] = 1;
  out["spec"] = spec;
  out["verdict"] = verdict_string(result.verdict);
  out["detail"] = result.verdict.detail;
  out["chain"] = chain_json(result.chain);
  if (!result.chain.levels.empty() && result.chain.levels[0].analysis) {
    const auto& a = *result.chain.levels[0].analysis;
    out["up_set"] = analysis_json(a, result.chain.levels[0].word.glyphs())
        ["up_set"];
    out["N"] = a.N;
    out["up_prime"] =
        analysis_json(a, result.chain.levels[0].word.glyphs())["up_prime"];
    out["phi"] = analysis_json(a, result.chain.levels[0].word.glyphs())["phi"];
    out["completeness"] =
        a.certified() ? "certified"
                      : "bounded(" + std::to_string(a.scan_bound) + ")";
  }
  json nu = json::array();
  for (const auto& e : result.chain.nu)
    nu.push_back(e.exact ? json(e.value)
                         : json(">=" + std::to_string(e.value)));
  out["nu"] = std::move(nu);
  if (result.chain.cycle)
    out["cycle"] =
        json::array({result.chain.cycle->first, result.chain.cycle->second});
  out["bounds"] = {{"scan", opt.scan_bound},
                   {"verify", opt.verify_len},
                   {"depth", opt.depth}};
  if (sturm) {
    json sj;
    sj["verdict"] = sturmian_verdict_string(*sturm);
    if (sturm->nf.singular()) {
      sj["normal_form"] = {{"u", render(sturm->nf.u, kBinaryGlyphs)},
                           {"directive", sturm->nf.directive.to_string()}};
    }
    out["sturmian"] = std::move(sj);
  }
  return out;
}

}  // namespace prefal
