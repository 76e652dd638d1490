#include "ecprime/record.hpp"

#include <stdexcept>

namespace ecprime {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

namespace {

std::string dec(const Int& v)
{
    return to_decimal(v);
}

Int big(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_string())
        throw std::invalid_argument(std::string("expected decimal string field '") + key + "'");
    return parse_natural(j.at(key).get<std::string>());
}

ojson point_json(const Affine& P)
{
    return ojson{{"x", dec(P.x)}, {"y", dec(P.y)}};
}

Affine point_from(const json& j)
{
    return Affine{big(j, "x"), big(j, "y")};
}

ojson outcome_json(const SequenceOutcome& o)
{
    ojson j{{"kind", outcome_name(o)}};
    if (const auto* hit = std::get_if<GcdHit>(&o)) {
        j["step"] = hit->step;
        j["divisor"] = dec(hit->divisor);
    } else if (const auto* fin = std::get_if<FinalNonzero>(&o)) {
        j["residue"] = dec(fin->residue);
    } else if (const auto* early = std::get_if<EarlyInfinity>(&o)) {
        j["step"] = early->step;
    }
    return j;
}

SequenceOutcome outcome_from(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "all-coprime-final-zero")
        return AllCoprimeAndFinalZero{};
    if (kind == "gcd-hit")
        return GcdHit{j.at("step").get<unsigned>(), big(j, "divisor")};
    if (kind == "final-nonzero")
        return FinalNonzero{big(j, "residue")};
    if (kind == "early-infinity")
        return EarlyInfinity{j.at("step").get<unsigned>()};
    throw std::invalid_argument("unknown sequence outcome '" + kind + "'");
}

ojson list_json(const std::vector<Int>& values)
{
    ojson arr = ojson::array();
    for (const Int& v : values)
        arr.push_back(dec(v));
    return arr;
}

std::vector<Int> list_from(const json& j)
{
    std::vector<Int> out;
    for (const auto& e : j)
        out.push_back(parse_natural(e.get<std::string>()));
    return out;
}

struct CertificateWriter {
    const JsonOptions& opts;

    ojson operator()(const SequenceCertificate& c) const
    {
        ojson j{{"type", "sequence"}, {"m", dec(c.m)}, {"k", c.k}, {"four_factor", c.four_factor}};
        if (c.base_point) {
            j["base_point"] = point_json(*c.base_point);
            j["multiplier"] = dec(c.multiplier);
            j["multiple_is_infinity"] = c.multiple_is_infinity;
        }
        if (!c.multiple_is_infinity)
            j["x0"] = dec(c.x0);
        if (c.outcome)
            j["outcome"] = outcome_json(*c.outcome);
        if (opts.include_trace && c.trace)
            j["trace"] = ojson{{"x", list_json(c.trace->x_values)}, {"s", list_json(c.trace->s_values)}};
        return j;
    }

    ojson operator()(const OrderCertificate& c) const
    {
        return ojson{{"type", "order"},
                     {"m", dec(c.m)},
                     {"point", point_json(c.point)},
                     {"k", c.k},
                     {"scalars", list_json(c.scalars)},
                     {"full_is_infinity", c.full_is_infinity},
                     {"attempts", c.attempts}};
    }

    ojson operator()(const FactorWitness& c) const
    {
        return ojson{{"type", "factor-witness"}, {"divisor", dec(c.divisor)}, {"stage", c.stage}};
    }

    ojson operator()(const OracleDecision& c) const
    {
        ojson j{{"type", "oracle"}};
        j["least_factor"] = c.least_factor ? ojson(std::to_string(*c.least_factor)) : ojson(nullptr);
        j["bound"] = std::to_string(c.bound);
        return j;
    }

    ojson operator()(const GateFailure& c) const { return ojson{{"type", "gate-failure"}, {"reason", c.reason}}; }

    ojson operator()(const RetriesExhausted& c) const
    {
        return ojson{{"type", "retries-exhausted"}, {"count", c.count}};
    }
};

Status status_from(const std::string& s)
{
    for (Status v : {Status::Prime, Status::Composite, Status::Inconclusive, Status::NotApplicable})
        if (s == status_name(v))
            return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

Algorithm algorithm_from(const std::string& s)
{
    for (Algorithm a : {Algorithm::Mersenne, Algorithm::SmallN, Algorithm::LargePrimeN, Algorithm::TwoPrimeN,
                        Algorithm::Oracle, Algorithm::None})
        if (s == algorithm_name(a))
            return a;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

}  // namespace

ojson certificate_to_json(const Certificate& cert, const JsonOptions& opts)
{
    return std::visit(CertificateWriter{opts}, cert);
}

Certificate certificate_from_json(const json& j)
{
    const auto type = j.at("type").get<std::string>();
    if (type == "sequence") {
        SequenceCertificate c;
        c.m = big(j, "m");
        c.k = j.at("k").get<unsigned>();
        c.four_factor = j.at("four_factor").get<bool>();
        if (j.contains("base_point")) {
            c.base_point = point_from(j.at("base_point"));
            c.multiplier = big(j, "multiplier");
            c.multiple_is_infinity = j.at("multiple_is_infinity").get<bool>();
        }
        if (j.contains("x0"))
            c.x0 = big(j, "x0");
        if (j.contains("outcome"))
            c.outcome = outcome_from(j.at("outcome"));
        if (j.contains("trace")) {
            STrace t;
            t.x_values = list_from(j.at("trace").at("x"));
            t.s_values = list_from(j.at("trace").at("s"));
            t.steps_completed = static_cast<unsigned>(t.s_values.size());
            t.m = c.m;
            t.four_factor = c.four_factor;
            c.trace = std::move(t);
        }
        return c;
    }
    if (type == "order") {
        OrderCertificate c;
        c.m = big(j, "m");
        c.point = point_from(j.at("point"));
        c.k = j.at("k").get<unsigned>();
        c.scalars = list_from(j.at("scalars"));
        c.full_is_infinity = j.at("full_is_infinity").get<bool>();
        c.attempts = j.at("attempts").get<unsigned>();
        return c;
    }
    if (type == "factor-witness")
        return FactorWitness{big(j, "divisor"), j.at("stage").get<std::string>()};
    if (type == "oracle") {
        OracleDecision c;
        c.bound = std::stoull(j.at("bound").get<std::string>());
        if (!j.at("least_factor").is_null())
            c.least_factor = std::stoull(j.at("least_factor").get<std::string>());
        return c;
    }
    if (type == "gate-failure")
        return GateFailure{j.at("reason").get<std::string>()};
    if (type == "retries-exhausted")
        return RetriesExhausted{j.at("count").get<unsigned>()};
    throw std::invalid_argument("unknown certificate type '" + type + "'");
}

ojson record_to_json(const RunRecord& record, const JsonOptions& opts)
{
    const FormCandidate& c = record.candidate;
    ojson cand{{"k", std::to_string(c.k())}, {"n", dec(c.n())}, {"p", dec(c.p())}};
    if (const auto& f = c.factors()) {
        cand["q1"] = dec(f->first);
        cand["q2"] = dec(f->second);
    }
    ojson j{{"schema", kSchema},
            {"tool_version", kToolVersion},
            {"candidate", std::move(cand)},
            {"algorithm", algorithm_name(record.verdict.algorithm)},
            {"verdict", status_name(record.verdict.status)},
            {"certificate", certificate_to_json(record.verdict.certificate, opts)},
            {"iterations", record.verdict.iterations}};
    if (record.verdict.probable_prime)
        j["probable_prime"] = *record.verdict.probable_prime;
    for (const auto& [key, value] : record.extra.items())
        j[key] = value;
    if (record.elapsed_ms)
        j["elapsed_ms"] = *record.elapsed_ms;
    return j;
}

RunRecord record_from_json(const json& j)
{
    if (j.value("schema", std::string{}) != kSchema)
        throw std::invalid_argument("unsupported record schema");
    const json& cand = j.at("candidate");
    const Int k_big = big(cand, "k");
    if (k_big > 1'000'000)
        throw std::invalid_argument("k out of range");
    const auto k = static_cast<unsigned>(k_big.get_ui());
    std::optional<FormCandidate> c;
    if (cand.contains("q1"))
        c.emplace(k, big(cand, "n"), big(cand, "q1"), big(cand, "q2"));
    else
        c.emplace(k, big(cand, "n"));
    if (c->p() != big(cand, "p"))
        throw std::invalid_argument("candidate p does not equal 2^k n - 1");

    Verdict v;
    v.status = status_from(j.at("verdict").get<std::string>());
    v.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
    v.certificate = certificate_from_json(j.at("certificate"));
    v.iterations = j.value("iterations", 0u);
    if (j.contains("probable_prime"))
        v.probable_prime = j.at("probable_prime").get<bool>();
    RunRecord r{*c, std::move(v), std::nullopt, ojson::object()};
    if (j.contains("elapsed_ms"))
        r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

ReplayResult replay_record(const json& j)
{
    const RunRecord r = record_from_json(j);
    return replay(r.candidate, r.verdict);
}

ojson report_to_json(const oracle::TheoremReport& report)
{
    ojson violations = ojson::array();
    for (const auto& v : report.violations) {
        ojson e{{"p", v.p}, {"m", v.m}, {"theorem", v.theorem}, {"detail", v.detail}};
        if (v.point)
            e["point"] = ojson{{"x", v.point->first}, {"y", v.point->second}};
        violations.push_back(std::move(e));
    }
    return ojson{{"schema", "ecprime.verify/1"},
                 {"tool_version", kToolVersion},
                 {"p_max", report.p_max},
                 {"primes_checked", report.primes_checked},
                 {"curves_checked", report.curves_checked},
                 {"cyclic_curves", report.cyclic_curves},
                 {"product_curves", report.product_curves},
                 {"points_checked", report.points_checked},
                 {"violation_count", report.violations.size()},
                 {"violations", std::move(violations)}};
}

}  // namespace ecprime
