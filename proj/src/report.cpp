#include "nilcantor/report.hpp"

#include <algorithm>
#include <json.hpp>

#include "nilcantor/errors.hpp"
#include "nilcantor/steinitz.hpp"

#ifndef NILCANTOR_VERSION
#define NILCANTOR_VERSION "0.0.0"
#endif

namespace nilcantor::report {
namespace {

using Json = nlohmann::ordered_json;

Json box_json(const Box& b) { return {{"ma", to_string(b.ma())}, {"mb", to_string(b.mb())}, {"mc", to_string(b.mc())}}; }

Json prime_list(const std::vector<Prime>& ps) {
  Json out = Json::array();
  for (Prime p : ps) out.push_back(std::to_string(p));
  return out;
}

Json view_json(const PrimeSetView& v) { return {{"primes", prime_list(v.enumerated)}, {"complete", v.complete}}; }

Json chain_json(const ChainSpec& chain) { return {{"label", chain.label()}, {"config", chain.to_config()}}; }

Json envelope(const std::string& command, const Json& chain, Json parameters, EvidenceGrade grade, Json results,
              std::uint64_t seed = 0) {
  Json out;
  out["command"] = command;
  out["tool_version"] = tool_version();
  out["seed"] = std::to_string(seed);
  out["chain"] = chain;
  out["parameters"] = std::move(parameters);
  out["evidence_grade"] = to_string(grade);
  out["results"] = std::move(results);
  return out;
}

std::string text(const Json& j) { return j.dump(2) + "\n"; }

Json spectrum_results(const ChainSpec& chain, Level depth, std::uint64_t bound) {
  auto order = steinitz_order(chain, depth);
  auto sp = spectra(order.limit, bound);
  std::vector<Prime> certified(order.certified_infinite.begin(), order.certified_infinite.end());
  return {{"depth", std::to_string(depth)},
          {"finite_order", order.finite.to_string()},
          {"limit", order.limit.to_string()},
          {"certified_infinite", prime_list(certified)},
          {"prime_bound", std::to_string(bound)},
          {"pi", view_json(sp.pi)},
          {"pi_f", view_json(sp.pi_f)},
          {"pi_inf", view_json(sp.pi_inf)}};
}

Json discriminant_results(const DiscriminantLimitReport& r) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < r.images.size(); ++i) {
    levels.push_back({{"depth", std::to_string(r.level + i)}, {"image", box_json(r.images[i])}, {"order", to_string(r.orders[i])}});
  }
  return {{"level", std::to_string(r.level)},
          {"images", levels},
          {"limit_image", box_json(r.limit_image)},
          {"limit_order", to_string(r.limit_order)},
          {"stabilized", r.stabilized}};
}

Json verdict_json(const Verdict& verdict) {
  Json out{{"name", verdict_name(verdict)}};
  if (auto* s = std::get_if<StableCertified>(&verdict)) {
    out["stable_from"] = std::to_string(s->stable_from);
    out["tested_depth"] = std::to_string(s->tested_depth);
  } else if (auto* w = std::get_if<WildEvidence>(&verdict)) {
    out["family_defect"] = std::to_string(w->defect);
  } else if (auto* f = std::get_if<FreeCertified>(&verdict)) {
    out["radius"] = std::to_string(f->radius);
    out["depth"] = std::to_string(f->depth);
    out["max_escape_depth"] = std::to_string(f->max_escape_depth);
    out["slowest_element"] = f->slowest.to_string();
  } else if (auto* n = std::get_if<NotFree>(&verdict)) {
    out["witness"] = n->witness.to_string();
    out["coordinate"] = std::string(1, coord_name(n->coordinate));
  } else if (auto* i = std::get_if<Inconclusive>(&verdict)) {
    out["reason"] = i->reason;
  }
  return out;
}

Json parameters_json(const Certificate& cert) {
  Json out = Json::object();
  for (const auto& [k, v] : cert.parameters) out[k] = v;
  return out;
}

Json wildness_results(const Certificate& cert) {
  Json pairs = Json::array();
  for (const auto& p : cert.pairs) {
    Json depths = Json::array();
    for (const auto& r : p.by_depth) {
      depths.push_back({{"depth", std::to_string(r.depth)},
                        {"kernel_box", box_json(r.kernel_box)},
                        {"comparison_box", box_json(r.comparison_box)},
                        {"kernel_order", to_string(r.kernel_order)},
                        {"limit_order", to_string(r.limit_order)},
                        {"surjective", r.surjective},
                        {"witness", r.witness ? Json(r.witness->to_string()) : Json(nullptr)}});
    }
    pairs.push_back({{"level", std::to_string(p.level)},
                     {"level_prime", std::to_string(p.level_prime)},
                     {"eventual_order", to_string(p.eventual_order)},
                     {"persistent", p.persistent},
                     {"depths", depths}});
  }
  return {{"verdict", verdict_json(cert.verdict)}, {"pairs", pairs}};
}

Json freeness_results(const Certificate& cert) {
  Json coords = Json::array();
  for (const auto& e : cert.escapes) {
    Json moduli = Json::array();
    for (const auto& m : e.kernel_moduli) moduli.push_back(to_string(m));
    coords.push_back({{"coordinate", std::string(1, coord_name(e.coordinate))},
                      {"kernel_moduli", moduli},
                      {"max_escape_depth", e.max_escape_depth ? Json(std::to_string(*e.max_escape_depth)) : Json(nullptr)},
                      {"stuck_value", e.stuck_value ? Json(std::to_string(*e.stuck_value)) : Json(nullptr)},
                      {"unbounded", e.unbounded}});
  }
  return {{"verdict", verdict_json(cert.verdict)}, {"coordinates", coords}};
}

}  // namespace

std::string tool_version() { return NILCANTOR_VERSION; }

std::string spectrum(const ChainSpec& chain, Level depth, std::uint64_t prime_bound) {
  if (depth < 1) throw ContractError("spectrum needs depth >= 1");
  return text(envelope("spectrum", chain_json(chain),
                       {{"depth", std::to_string(depth)}, {"bound", std::to_string(prime_bound)}},
                       EvidenceGrade::ScheduleCertified, spectrum_results(chain, depth, prime_bound)));
}

std::string discriminant(const ChainSpec& chain, Level level, Level depth, const ClosureOptions& options) {
  auto r = discriminant_limit_report(chain, level, depth, options);
  return text(envelope("discriminant", chain_json(chain),
                       {{"level", std::to_string(level)}, {"depth", std::to_string(depth)}},
                       r.stabilized ? EvidenceGrade::ScheduleCertified : EvidenceGrade::FiniteDepth,
                       discriminant_results(r)));
}

std::string wildness(const ChainSpec& chain, Level max_cylinder, Level max_depth) {
  auto cert = wildness_certificate(chain, max_cylinder, max_depth);
  return text(envelope("wildness", chain_json(chain), parameters_json(cert), cert.grade, wildness_results(cert)));
}

std::string freeness(const ChainSpec& chain, Level cylinder, std::uint64_t radius, Level max_depth) {
  auto cert = freeness_certificate(chain, cylinder, radius, max_depth);
  return text(envelope("freeness", chain_json(chain), parameters_json(cert), cert.grade, freeness_results(cert)));
}

std::string oracle_check(const OracleRequest& req, const nilcantor::oracle::OracleBudget& budget) {
  budget.validate();
  Json params{{"target", req.target},
              {"max_modulus", std::to_string(budget.max_modulus)},
              {"max_group_order", std::to_string(budget.max_group_order)},
              {"random_trials", std::to_string(budget.random_trials)}};
  Json results;
  Json chain = nullptr;
  auto need = [&](const auto& field, const char* flag) -> decltype(auto) {
    if (!field) throw ContractError("oracle " + req.target + " needs " + flag);
    return *field;
  };

  if (req.target == "core") {
    const Box& b = need(req.box, "--box");
    params["box"] = b.to_string();
    auto found = nilcantor::oracle::core_by_enumeration(b, budget);
    results = {{"enumerated", box_json(found)}, {"closed_form", box_json(core(b))}, {"agree", found == core(b)}};
  } else if (req.target == "relative-core") {
    const Box& o = need(req.outer, "--outer");
    const Box& i = need(req.inner, "--inner");
    params["outer"] = o.to_string();
    params["inner"] = i.to_string();
    auto found = nilcantor::oracle::relative_core_by_enumeration(o, i, budget);
    auto closed = relative_core(o, i);
    results = {{"enumerated", box_json(found)}, {"closed_form", box_json(closed)}, {"agree", found == closed}};
  } else if (req.target == "fixing-scan") {
    const ChainSpec& c = need(req.chain, "a chain");
    chain = chain_json(c);
    params["level"] = std::to_string(req.level);
    params["depth"] = std::to_string(req.depth);
    auto found = nilcantor::oracle::fixing_scan(c, req.level, req.depth, budget);
    Box kernel = trivial_action_kernel(c, req.level, req.depth);
    FiniteQuotient q = quotient_at(c, req.depth);
    Integer expected = q.order() / (kernel.ma() * kernel.mb() * kernel.mc());
    bool agree = Integer(std::to_string(found.size())) == expected &&
                 std::all_of(found.begin(), found.end(), [&](const Element& g) { return kernel.contains(g); });
    results = {{"enumerated_size", std::to_string(found.size())},
               {"closed_form", box_json(kernel)},
               {"closed_form_size", to_string(expected)},
               {"agree", agree}};
  } else if (req.target == "coset-partition") {
    const Box& b = need(req.box, "--box");
    params["box"] = b.to_string();
    nilcantor::oracle::CosetPartition partition(b, budget);
    results = {{"grid_points", std::to_string(partition.points().size())},
               {"classes", std::to_string(partition.class_count())}};
    if (req.element) {
      params["element"] = req.element->to_string();
      Element canonical = canonical_coset(CosetSpace(b), *req.element);
      auto cls = partition.class_of(*req.element);
      results["canonical_coset"] = canonical.to_string();
      results["class_representative"] = cls ? Json(partition.representatives()[*cls].to_string()) : Json(nullptr);
      results["agree"] = cls && partition.class_of(canonical) == cls;
    }
  } else if (req.target == "equivalence") {
    // An explicit pair is checked alone; otherwise a seeded random sweep.
    std::vector<std::pair<Box, Box>> pairs;
    if (req.outer || req.inner) {
      pairs.emplace_back(need(req.outer, "--outer"), need(req.inner, "--inner"));
      params["outer"] = pairs.front().first.to_string();
      params["inner"] = pairs.front().second.to_string();
    } else {
      params["seed"] = std::to_string(budget.seed);
      pairs = nilcantor::oracle::random_nested_pairs(budget.random_trials, budget.max_modulus, budget.seed);
    }
    Json failures = Json::array();
    for (const auto& [outer, inner] : pairs) {
      auto check = nilcantor::oracle::check_closed_forms(outer, inner, budget);
      if (!check.ok()) {
        failures.push_back({{"outer", outer.to_string()},
                            {"inner", inner.to_string()},
                            {"core", check.core},
                            {"relative_core", check.relative_core},
                            {"kernel", check.kernel},
                            {"canonical_coset", check.canonical_coset}});
      }
    }
    results = {{"pairs_checked", std::to_string(pairs.size())}, {"failures", failures}, {"agree", failures.empty()}};
  } else {
    throw ContractError("unknown oracle target '" + req.target +
                        "' (expected core, relative-core, fixing-scan, coset-partition or equivalence)");
  }
  return text(envelope("oracle", chain, std::move(params), EvidenceGrade::FiniteDepth, std::move(results), budget.seed));
}

namespace {

Json reproduce_example(const ChainSpec& chain, Level max_level) {
  Json levels = Json::array();
  for (Level l = 1; l <= max_level; ++l) {
    auto d = discriminant_level(chain, l);
    levels.push_back({{"level", std::to_string(l)},
                      {"box", box_json(box_at(chain, l))},
                      {"core", box_json(core_at(chain, l))},
                      {"quotient_order", to_string(quotient_at(chain, l).order())},
                      {"discriminant_order", to_string(d.order())},
                      {"coset_count", to_string(index_in(Box::whole(), box_at(chain, l)))}});
  }
  auto disc = discriminant_limit_report(chain, 1, max_level);
  auto wild = wildness_certificate(chain, 3, max_level);
  return {{"levels", levels},
          {"stable_image_1_2_order", to_string(stable_image(chain, 1, 2).order())},
          {"discriminant", discriminant_results(disc)},
          {"spectrum", spectrum_results(chain, max_level, 50)},
          {"wildness", wildness_results(wild)}};
}

}  // namespace

std::string reproduce(const std::string& name, const ReproduceOptions& options) {
  Json params{{"name", name}};
  if (name == "ex41" || name == "ex42") {
    auto chain = name == "ex41" ? example_41(2) : example_42(2, 3);
    params["depths"] = "1-4";
    return text(envelope("reproduce", chain_json(chain), std::move(params), EvidenceGrade::ScheduleCertified,
                         reproduce_example(chain, 4)));
  }
  if (name == "thm13") {
    auto chain = stable_chain({2, 3}, {1, 1}, {2, 2}, {5});
    params["l_max"] = "3";
    params["d_max"] = "4";
    auto cert = wildness_certificate(chain, 3, 4);
    Json results{{"wildness", wildness_results(cert)},
                 {"discriminant", discriminant_results(discriminant_limit_report(chain, 1, 3))},
                 {"spectrum", spectrum_results(chain, 4, 50)}};
    return text(envelope("reproduce", chain_json(chain), std::move(params), cert.grade, std::move(results)));
  }
  if (name == "thm15") {
    auto chain = wild_chain(2, 1, {});
    params["l_max"] = "3";
    params["d_max"] = "5";
    params["level"] = "1";
    params["radius"] = "100";
    params["free_d_max"] = "6";
    auto wild = wildness_certificate(chain, 3, 5);
    auto free = freeness_certificate(chain, 1, 100, 6);
    Json results{{"wildness", wildness_results(wild)},
                 {"freeness", freeness_results(free)},
                 {"spectrum", spectrum_results(chain, 5, 50)}};
    return text(envelope("reproduce", chain_json(chain), std::move(params), wild.grade, std::move(results)));
  }
  if (name == "cor16") {
    if (options.count < 2) throw ContractError("cor16 needs count >= 2");
    params["count"] = std::to_string(options.count);
    params["bound"] = std::to_string(options.bound);
    std::uint64_t width = 0;
    while ((std::uint64_t{1} << width) < options.count) ++width;
    auto sets = almost_disjoint_spectra(options.count, width);
    std::vector<ChainSpec> chains;
    std::vector<SteinitzNumber> orders;
    Json chain_list = Json::array();
    bool all_wild = true;
    for (const auto& set : sets) {
      chains.push_back(wild_chain(2, 1, {}, set));
      orders.push_back(steinitz_order(chains.back(), 3).limit);
      auto cert = wildness_certificate(chains.back(), 2, 3);
      all_wild = all_wild && std::holds_alternative<WildEvidence>(cert.verdict);
      auto sp = spectra(orders.back(), options.bound);
      chain_list.push_back({{"label", chains.back().label()},
                            {"prime_set", set.id()},
                            {"steinitz_order", orders.back().to_string()},
                            {"pi_f", view_json(sp.pi_f)},
                            {"wildness", verdict_name(cert.verdict)}});
    }
    Json pairs = Json::array();
    std::uint64_t inequivalent = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      for (std::size_t j = i + 1; j < orders.size(); ++j) {
        bool eq = asymptotically_equivalent(orders[i], orders[j], options.bound);
        inequivalent += !eq;
        pairs.push_back({{"first", std::to_string(i)}, {"second", std::to_string(j)}, {"equivalent", eq}});
      }
    Json results{{"chains", chain_list},
                 {"pairs", pairs},
                 {"inequivalent_pairs", std::to_string(inequivalent)},
                 {"all_wild", all_wild}};
    return text(envelope("reproduce", nullptr, std::move(params), EvidenceGrade::ScheduleCertified, std::move(results)));
  }
  throw ContractError("unknown scenario '" + name + "' (expected ex41, ex42, thm13, thm15 or cor16)");
}

}  // namespace nilcantor::report
