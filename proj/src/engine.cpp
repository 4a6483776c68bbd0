#include "twistlab/engine.hpp"

#include <algorithm>

#include "twistlab/gmodule.hpp"
#include "twistlab/parity.hpp"
#include "twistlab/twistsearch.hpp"

namespace twistlab {

namespace {

const Integer kJsonSafe = (Integer(1) << 53);

Error input_error(const std::string& what) { return Error(ErrorCode::InvalidInput, what); }

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw input_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::optional<Integer> optional_integer(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return integer_from_json(j.at(key));
}

std::optional<int> optional_int(const Json& j, const char* key) {
    auto v = optional_integer(j, key);
    if (!v) return std::nullopt;
    if (!v->fits_sint_p()) throw input_error(std::string("field \"") + key + "\" out of range");
    return static_cast<int>(v->get_si());
}

Json integers_json(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_json(x));
    return a;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Json root_number_json(const Curve& E, bool& unsupported) {
    try {
        const RootNumberReport r = root_number(E);
        Json local = Json::array();
        for (const auto& [v, w] : r.local) local.push_back({place_json(v), w});
        return {{"global", r.global}, {"local", local}};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OutOfDomain) throw;
        unsupported = true;
        return nullptr;
    }
}

Json reduction_json(const Curve& M) {
    Json red = Json::array();
    for (const auto& r : bad_reduction(M))
        red.push_back({integer_json(r.place.prime()), std::string(reduction_kind_name(r.type)), r.ordDeltaMin});
    return red;
}

CommandResult cmd_analyze(const Json& in) {
    CommandResult res;
    const Curve E = curve_from_json(require(in, "curve"));
    const Curve M = minimal_model(E);
    const TwoDivisionData td = two_division(M);
    Json roots = Json::array();
    for (const auto& x : td.rationalRoots) roots.push_back(rational_string(x));
    Json cubic = Json::array();
    for (const auto& c : td.cubic) cubic.push_back(integer_json(c));
    Json out = curve_to_json(E);
    out["minimal"] = curve_to_json(M);
    out["galoisType"] = std::string(galois_type_name(td.galoisType));
    out["torsionDimQ"] = td.torsionDimQ;
    out["cubic"] = cubic;
    out["rationalRoots"] = roots;
    out["reduction"] = reduction_json(M);
    out["realSignDelta"] = real_reduction(M).realSignDelta;
    out["rootNumber"] = root_number_json(M, res.unsupported);
    res.output = out;
    return res;
}

Json delta_json(const NormIndexReport& rep, Json& rules, Json& unsupported_places) {
    Json delta = Json::array();
    rules = Json::object();
    unsupported_places = Json::array();
    for (const auto& e : rep.entries) {
        delta.push_back({place_json(e.place), e.delta ? Json(*e.delta) : Json(nullptr)});
        rules[e.place.to_string()] = e.rule;
        if (!e.delta) unsupported_places.push_back(place_json(e.place));
    }
    return delta;
}

CommandResult cmd_twist(const Json& in) {
    CommandResult res;
    const Curve E = minimal_model(curve_from_json(require(in, "curve")));
    const Integer d = integer_from_json(require(in, "d"));
    const auto d2 = optional_int(in, "d2");
    const NormIndexReport rep = norm_index_report(E, d);
    Json rules, unsupported_places;
    Json out;
    out["curve"] = curve_to_json(E)["a"];
    out["d"] = integer_json(d);
    out["flip"] = rep.totalParity ? Json(*rep.totalParity) : Json(nullptr);
    out["delta"] = delta_json(rep, rules, unsupported_places);
    out["rules"] = rules;
    if (!unsupported_places.empty()) {
        out["unsupported"] = unsupported_places;
        res.unsupported = true;
    }
    out["rootNumber"] = nullptr;
    bool rn_unsupported = false;
    Json w = root_number_json(E, rn_unsupported);
    if (!w.is_null()) out["rootNumber"] = w["global"];
    const Curve Ed = twist(E, d);
    out["twist"] = curve_to_json(Ed)["a"];
    Json wd = root_number_json(Ed, rn_unsupported);
    out["rootNumberTwist"] = wd.is_null() ? Json(nullptr) : wd["global"];
    if (rn_unsupported) res.unsupported = true;
    const Admissibility adm = admissible(E, d);
    out["admissible"] = adm.admissible;
    if (adm.admissible) out["T"] = integers_json(adm.T);
    else out["violation"] = adm.reason;
    if (d2 && rep.totalParity) out["predictedParity"] = ((*d2 + *rep.totalParity) % 2 + 2) % 2;
    res.output = out;
    return res;
}

Json envelope_json(const SelmerEnvelope& env) {
    Json out;
    out["T"] = integers_json(env.T);
    out["t"] = env.t;
    out["possible"] = env.possible;
    out["exact"] = env.exact ? Json(*env.exact) : Json(nullptr);
    return out;
}

CommandResult cmd_envelope(const Json& in) {
    const Curve E = curve_from_json(require(in, "curve"));
    const Integer d = integer_from_json(require(in, "d"));
    const auto d2 = optional_int(in, "d2");
    if (!d2) throw input_error("missing field \"d2\"");
    return {envelope_json(selmer_envelope(E, d, *d2, optional_int(in, "dimVT"))), false};
}

std::vector<Place> places_from_json(const Json& j) {
    std::vector<Place> T;
    if (!j.is_array()) throw input_error("T must be an array");
    for (const auto& v : j) T.push_back(place_from_json(v));
    return T;
}

CommandResult cmd_descend(const Json& in) {
    CommandResult res;
    const FullTorsionCurve E = full_torsion_from_json(require(in, "curve"));
    const DescentBasis B = sel2(E);
    Json out;
    out["e"] = integers_json({E.e().begin(), E.e().end()});
    out["d2"] = B.dim;
    Json basis = Json::array();
    for (const auto& [a, b] : B.generators) basis.push_back({integer_json(a), integer_json(b)});
    out["basis"] = basis;
    out["support"] = integers_json(B.support);
    bool unsupported = false;
    Json w = root_number_json(E.curve(), unsupported);
    out["rootNumber"] = w.is_null() ? Json(nullptr) : w["global"];
    if (!w.is_null()) out["parityCheck"] = (B.dim % 2 == 0 ? 1 : -1) == w["global"].get<int>();
    if (in.contains("T")) {
        const SelmerSetup s = relaxed_strict(E, places_from_json(in.at("T")));
        Json T = Json::array();
        for (const auto& v : s.T) T.push_back(place_json(v));
        out["setup"] = {{"T", T}, {"dimStrict", s.dimStrict}, {"dimRelaxed", s.dimRelaxed}, {"dimVT", s.dimVT}};
    }
    if (auto d = optional_integer(in, "d")) {
        const Lem2Report r = verify_lem2(E, *d);
        out["twistCheck"] = {{"d", integer_json(r.d)},          {"T", integers_json(r.T)},
                       {"t", r.t},                         {"d2Base", r.d2Base},
                       {"d2Twist", r.d2Twist},             {"dimVT", r.dimVT},
                       {"dd", r.dd},                       {"dimVTTwist", r.dimVTTwist},
                       {"equality", r.equalityHolds},      {"range", r.rangeHolds},
                       {"parity", r.parityHolds},          {"ok", r.ok()}};
    }
    res.output = out;
    return res;
}

Json density_json(const DensityReport& r) {
    Json counts = Json::object(), expected = Json::object(), observed = Json::object();
    for (const auto& [k, v] : r.counts) counts[std::to_string(k)] = v;
    for (const auto& [k, v] : r.expected) expected[std::to_string(k)] = v;
    for (const auto& [k, v] : r.observed) observed[std::to_string(k)] = v;
    return {{"X", integer_json(r.X)}, {"counts", counts}, {"expected", expected}, {"observed", observed},
            {"primesExamined", r.primesExamined}, {"n1Count", r.n1Count}, {"exponent", r.exponent}};
}

Integer max_x(const Json& in) {
    auto x = optional_integer(in, "maxX");
    if (!x) throw input_error("missing field \"maxX\"");
    return *x;
}

CommandResult cmd_search(const Json& in) {
    const std::string mode = in.value("mode", std::string("stable"));
    CommandResult res;
    Json out;
    out["mode"] = mode;
    if (mode == "family") {
        const auto p = optional_integer(in, "p");
        if (!p) throw input_error("missing field \"p\"");
        const Integer t0 = optional_integer(in, "t0").value_or(Integer(0));
        const FamilyMember f = family_curve(*p, t0, optional_integer(in, "eta"));
        out["p"] = integer_json(f.p);
        out["eta"] = integer_json(f.eta);
        out["t0"] = integer_json(f.t0);
        out["g"] = integer_json(f.g);
        out["curve"] = curve_to_json(f.curve);
        res.output = out;
        return res;
    }
    const Curve E = curve_from_json(require(in, "curve"));
    const Integer X = max_x(in);
    out["X"] = integer_json(X);
    if (mode == "stable") {
        out["primes"] = integers_json(stable_twist_primes(E, X));
    } else if (mode == "step") {
        out["anchor"] = place_json(step_anchor(E));
        Json c = Json::array();
        for (const auto& s : step_twist_candidates(E, X))
            c.push_back({{"p", integer_json(s.p)}, {"d", integer_json(s.d)}, {"flip", s.flipBit},
                         {"envelopeOffsets", s.envelopeOffsets}});
        out["candidates"] = c;
    } else if (mode == "flip") {
        auto d = flip_twist(E, X);
        out["d"] = d ? integer_json(*d) : Json(nullptr);
        out["found"] = d.has_value();
    } else if (mode == "witness") {
        auto d = parity_flip_witness(E, X);
        out["d"] = d ? integer_json(*d) : Json(nullptr);
        out["found"] = d.has_value();
    } else if (mode == "density") {
        const unsigned jobs = static_cast<unsigned>(std::max(1, optional_int(in, "jobs").value_or(1)));
        out.update(density_json(density_scan(E, X, jobs)));
    } else {
        throw input_error("unknown search mode \"" + mode + "\"");
    }
    res.output = out;
    return res;
}

CommandResult cmd_classify(const Json& in) {
    const Json& places = require(in, "places");
    if (!places.is_array()) throw input_error("places must be an array");
    std::vector<PlaceDescriptor> descs;
    for (const auto& p : places) descs.push_back(descriptor_from_json(p));
    const ConstantParityVerdict v = classify_constant_parity(descs);
    Json out;
    out["verdict"] = v.constant ? "Constant" : "NotConstant";
    out["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
    return {out, false};
}

Json poly_list(const std::vector<F2Poly>& fs) {
    Json a = Json::array();
    for (const auto& f : fs) a.push_back(f2poly_to_string(f));
    return a;
}

CommandResult cmd_gmodule(const Json& in) {
    const auto p = optional_int(in, "p");
    if (!p || *p < 0) throw input_error("missing or invalid field \"p\"");
    const CyclicGroupAlgebra g = group_algebra(static_cast<unsigned>(*p));
    Json out;
    out["p"] = *p;
    out["factors"] = poly_list(g.factors);
    out["simpleDims"] = g.simpleDims;
    if (in.contains("matrix")) {
        const Json& rows = in.at("matrix");
        if (!rows.is_array()) throw input_error("matrix must be an array of bit strings");
        GModule B;
        B.p = static_cast<unsigned>(*p);
        const std::size_t n = rows.size();
        B.action = BitMatrix(0, n);
        for (const auto& r : rows) {
            if (!r.is_string()) throw input_error("matrix rows must be bit strings");
            BitVector v;
            try {
                v = BitVector::from_string(r.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw input_error(e.what());
            }
            if (v.size() != n) throw Error(ErrorCode::InvalidAction, "action matrix is not square");
            B.action.append_row(v);
        }
        const ModuleSplit s = split_module(B);
        Json mult = Json::array();
        for (const auto& m : s.multiplicities)
            mult.push_back({{"simple", f2poly_to_string(m.simple)}, {"dim", m.simpleDim}, {"multiplicity", m.multiplicity}});
        out["dim"] = n;
        out["fixedDim"] = s.fixedDim;
        out["newDim"] = s.newDim;
        out["multiplicities"] = mult;
        out["stability"] =
            rank_stability(s.multiplicities) == StabilityVerdict::RankStable ? "RankStable" : "Inconclusive";
    }
    return {out, false};
}

}  // namespace

Json integer_json(const Integer& n) {
    if (abs(n) < kJsonSafe) return Json(n.get_si());
    return Json(n.get_str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        Integer n;
        if (s.empty() || n.set_str(s, 10) != 0) throw input_error("not an integer: \"" + s + "\"");
        return n;
    }
    throw input_error("expected an integer, got " + j.dump());
}

FullTorsionCurve full_torsion_from_json(const Json& j) {
    const Json& e = require(j, "e");
    if (!e.is_array() || e.size() != 3) throw input_error("\"e\" must hold three integers");
    return FullTorsionCurve(integer_from_json(e[0]), integer_from_json(e[1]), integer_from_json(e[2]));
}

Curve curve_from_json(const Json& j) {
    if (j.is_object() && j.contains("e")) return full_torsion_from_json(j).curve();
    const Json& a = require(j, "a");
    if (!a.is_array() || a.size() != 5) throw input_error("\"a\" must hold five integers");
    std::array<Integer, 5> v;
    for (std::size_t i = 0; i < 5; ++i) v[i] = integer_from_json(a[i]);
    return make_curve(v);
}

Json curve_to_json(const Curve& E) {
    Json a = Json::array();
    for (const auto& x : E.a) a.push_back(integer_json(x));
    return {{"a", a},
            {"b2", integer_json(E.b2)},
            {"b4", integer_json(E.b4)},
            {"b6", integer_json(E.b6)},
            {"b8", integer_json(E.b8)},
            {"c4", integer_json(E.c4)},
            {"c6", integer_json(E.c6)},
            {"disc", integer_json(E.disc)},
            {"j", rational_string(E.j)}};
}

Json place_json(const Place& v) { return v.is_real() ? Json("inf") : integer_json(v.prime()); }

Place place_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "real" || s == "Real") return Place::real();
    }
    const Integer p = integer_from_json(j);
    if (!is_probable_prime(p)) throw input_error(to_string(p) + " is not prime");
    return Place::finite(p);
}

PlaceDescriptor descriptor_from_json(const Json& j) {
    PlaceDescriptor d;
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "real") d.kind = PlaceKind::Real;
    else if (kind == "complex") d.kind = PlaceKind::Complex;
    else if (kind == "finite") d.kind = PlaceKind::Finite;
    else throw input_error("unknown place kind \"" + kind + "\"");
    if (d.kind == PlaceKind::Finite) {
        d.p = integer_from_json(require(j, "p"));
        d.ramified = j.value("ramified", false);
        const std::string red = j.value("reduction", std::string("good"));
        if (red == "good") d.reduction = LocalReduction::Good;
        else if (red == "mult_split") d.reduction = LocalReduction::MultSplit;
        else if (red == "mult_nonsplit") d.reduction = LocalReduction::MultNonsplit;
        else if (red == "additive") d.reduction = LocalReduction::Additive;
        else throw input_error("unknown reduction \"" + red + "\"");
        d.ordDelta = j.value("ordDelta", 0U);
    }
    const std::string flag = j.value("flag", std::string("unknown"));
    if (flag == "yes") d.deltaParityFlag = Tri::Yes;
    else if (flag == "no") d.deltaParityFlag = Tri::No;
    else if (flag == "unknown") d.deltaParityFlag = Tri::Unknown;
    else throw input_error("unknown flag \"" + flag + "\"");
    return d;
}

CommandResult run_command(const std::string& command, const Json& inputs) {
    try {
        if (command == "analyze") return cmd_analyze(inputs);
        if (command == "twist") return cmd_twist(inputs);
        if (command == "envelope") return cmd_envelope(inputs);
        if (command == "descend") return cmd_descend(inputs);
        if (command == "search") return cmd_search(inputs);
        if (command == "density") {
            Json in = inputs;
            in["mode"] = "density";
            return cmd_search(in);
        }
        if (command == "classify") return cmd_classify(inputs);
        if (command == "gmodule") return cmd_gmodule(inputs);
    } catch (const Json::exception& e) {
        throw input_error(e.what());
    }
    throw input_error("unknown command \"" + command + "\"");
}

}  // namespace twistlab
