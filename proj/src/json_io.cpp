#include "klt/json_io.hpp"

#include "klt/error.hpp"

namespace klt {

json field_to_json(const FieldCtx& ctx) {
    return json{{"p", ctx.p},
                {"modulus", ctx.modulus},
                {"generator", ctx.generator.c}};
}

FieldCtx field_from_json(const json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    std::vector<long long> modulus = j.at("modulus").get<std::vector<long long>>();
    FieldCtx ctx = ff_make(p, modulus);
    if (j.contains("generator")) {
        std::vector<long long> g = j.at("generator").get<std::vector<long long>>();
        if (!(ctx.from_residues(g) == ctx.generator))
            fail(errc::invalid_argument, "field descriptor generator mismatch");
    }
    return ctx;
}

json elem_to_json(const FieldCtx& ctx, const FFElem& x) {
    if (ctx.m == 1) return json((long long)x.c[0]);
    return json(x.c);
}

FFElem elem_from_json(const FieldCtx& ctx, const json& j) {
    if (j.is_number()) return ctx.from_residues({j.get<long long>()});
    return ctx.from_residues(j.get<std::vector<long long>>());
}

json poly_to_json(const FieldCtx& ctx, const FqPoly& f) {
    json arr = json::array();
    for (const auto& c : f.c) arr.push_back(elem_to_json(ctx, c));
    return arr;
}

FqPoly poly_from_json(const FieldCtx& ctx, const json& j) {
    FqPoly f;
    for (const auto& c : j) f.c.push_back(elem_from_json(ctx, c));
    fq_trim(f);
    return f;
}

MatrixFq matrix_from_json(const FieldCtx& ctx, const json& j) {
    std::vector<std::vector<long long>> rows;
    for (const auto& row : j) rows.push_back(row.get<std::vector<long long>>());
    return MatrixFq::from_residues(ctx, rows);
}

json matrix_to_json(const MatrixFq& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.n(); ++j2) row.push_back(elem_to_json(m.ctx(), m.at(i, j2)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json klvalue_to_json(const KlValue& v) {
    json j{{"re", v.value.real()},
           {"im", v.value.imag()},
           {"q", v.q},
           {"d", v.d},
           {"k", v.k},
           {"normalized", v.normalized},
           {"convention", v.convention == KlConvention::plain ? "plain" : "signed"}};
    if (v.exact_num) j["exact_numerator"] = *v.exact_num;
    return j;
}

json matkl_to_json(const MatKlResult& r) {
    json blocks = json::array();
    for (size_t i = 0; i < r.class_data.blocks.size(); ++i) {
        const auto& b = r.class_data.blocks[i];
        json jb{{"d", b.d}, {"mu", b.mu.parts}};
        jb["minpoly"] = json::array();
        for (const auto& c : b.minpoly.c)
            jb["minpoly"].push_back(c.c.size() == 1 ? json((long long)c.c[0]) : json(c.c));
        if (i < r.per_block.size())
            jb["value"] = json{{"re", r.per_block[i].real()}, {"im", r.per_block[i].imag()}};
        blocks.push_back(std::move(jb));
    }
    return json{{"value", {{"re", r.value.real()}, {"im", r.value.imag()}}},
                {"n", r.n},
                {"q", r.q},
                {"k", r.k},
                {"normalized", true},
                {"blocks", std::move(blocks)}};
}

json gof_to_json(const GofReport& g) {
    return json{{"ks_stat", g.ks_stat}, {"chi2", g.chi2}, {"pvalue_ks", g.pvalue_ks}, {"n", g.n}};
}

json histogram_to_json(const Histogram& h) {
    return json{{"domain", h.domain == RefDensity::semicircle_trace ? "trace" : "angle"},
                {"edges", h.edges},
                {"counts", h.counts},
                {"total", h.total}};
}

json report_to_json(const TestReport& r) {
    return json{{"n_total", r.n_total},
                {"n_elliptic", r.n_elliptic},
                {"n_split", r.n_split},
                {"n_scalar", r.n_scalar},
                {"expected_fractions",
                 {{"elliptic", r.expected_elliptic},
                  {"split", r.expected_split},
                  {"scalar", r.expected_scalar}}},
                {"trace_gof", gof_to_json(r.trace_gof)},
                {"angle_gof", gof_to_json(r.angle_gof)},
                {"reference_tests",
                 {{"frequency_pvalue", r.freq_pvalue}, {"runs_pvalue", r.runs_pvalue}}},
                {"alpha", r.alpha},
                {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json detection_to_json(const DetectionRates& d) {
    json rows = json::array();
    for (const auto& row : d.rows)
        rows.push_back(json{{"generator", row.generator},
                            {"matrix_kloosterman", row.matrix_rate},
                            {"frequency", row.freq_rate},
                            {"runs", row.runs_rate}});
    return json{{"trials", d.trials}, {"alpha", d.alpha}, {"p", d.p}, {"rows", std::move(rows)}};
}

json lpoly_to_json(const LPoly& l) {
    json coeffs = json::array();
    for (const auto& c : l.coeffs) coeffs.push_back(json{{"re", c.real()}, {"im", c.imag()}});
    return json{{"k", l.k},
                {"base_field_size", l.base_field_size},
                {"xi", l.xi},
                {"coeffs", std::move(coeffs)}};
}

bool json_matches_schema(const json& doc, const json& schema, std::string* why) {
    auto mismatch = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        if (t == "object" && !doc.is_object()) return mismatch("expected object");
        if (t == "array" && !doc.is_array()) return mismatch("expected array");
        if (t == "string" && !doc.is_string()) return mismatch("expected string");
        if (t == "boolean" && !doc.is_boolean()) return mismatch("expected boolean");
        if (t == "number" && !doc.is_number()) return mismatch("expected number");
        if (t == "integer" && !doc.is_number_integer()) return mismatch("expected integer");
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"])
            if (v == doc) ok = true;
        if (!ok) return mismatch("value not in enum");
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!doc.contains(key.get<std::string>()))
                return mismatch("missing required key " + key.get<std::string>());
    if (schema.contains("properties") && doc.is_object()) {
        for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
            if (!doc.contains(it.key())) continue;
            std::string sub;
            if (!json_matches_schema(doc[it.key()], it.value(), &sub))
                return mismatch(it.key() + ": " + sub);
        }
    }
    if (schema.contains("items") && doc.is_array()) {
        for (const auto& el : doc) {
            std::string sub;
            if (!json_matches_schema(el, schema["items"], &sub)) return mismatch("item: " + sub);
        }
    }
    if (why) why->clear();
    return true;
}

} // namespace klt
