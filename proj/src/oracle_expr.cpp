#include "polcheck/oracle_expr.hpp"

namespace polcheck::ox {

Json lit(const FieldElement& e) { return lit_text(e.to_string()); }

Json lit_text(const std::string& text) { return Json{{"op", "lit"}, {"v", text}}; }

Json var(const std::string& name) { return Json{{"op", "var"}, {"name", name}}; }

namespace {
Json binary(const char* op, Json a, Json b) {
    return Json{{"op", op}, {"args", Json::array({std::move(a), std::move(b)})}};
}
}  // namespace

Json add(Json a, Json b) { return binary("add", std::move(a), std::move(b)); }
Json sub(Json a, Json b) { return binary("sub", std::move(a), std::move(b)); }
Json mul(Json a, Json b) { return binary("mul", std::move(a), std::move(b)); }
Json div(Json a, Json b) { return binary("div", std::move(a), std::move(b)); }
Json neg(Json a) { return Json{{"op", "neg"}, {"arg", std::move(a)}}; }
Json pow(Json a, long e) { return Json{{"op", "pow"}, {"arg", std::move(a)}, {"exp", e}}; }

Json sum(std::vector<Json> terms) {
    Json j{{"op", "add"}, {"args", Json::array()}};
    for (auto& t : terms) j["args"].push_back(std::move(t));
    return j;
}

Json apply_map(const Json& map_desc, Json arg) {
    return Json{{"op", "map"}, {"map", map_desc}, {"arg", std::move(arg)}};
}

Json eval_form(const Json& form_desc, std::vector<Json> args) {
    Json j{{"op", "form"}, {"form", form_desc}, {"args", Json::array()}};
    for (auto& a : args) j["args"].push_back(std::move(a));
    return j;
}

Json trace(const Json& form_desc, Json arg) {
    return Json{{"op", "trace"}, {"form", form_desc}, {"arg", std::move(arg)}};
}

Json lambda(const std::string& param, Json body) { return Json{{"param", param}, {"body", std::move(body)}}; }

Json call(const Json& fn, Json arg) { return Json{{"op", "call"}, {"fn", fn}, {"arg", std::move(arg)}}; }

Json delta(const Json& fn, Json at, std::vector<Json> incs) {
    Json j{{"op", "delta"}, {"fn", fn}, {"at", std::move(at)}, {"incs", Json::array()}};
    for (auto& y : incs) j["incs"].push_back(std::move(y));
    return j;
}

Json rank(std::vector<std::vector<Json>> rows) {
    Json j{{"op", "rank"}, {"rows", Json::array()}};
    for (auto& row : rows) {
        Json r = Json::array();
        for (auto& e : row) r.push_back(std::move(e));
        j["rows"].push_back(std::move(r));
    }
    return j;
}

std::vector<Json> lits(const std::vector<FieldElement>& es) {
    std::vector<Json> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(lit(e));
    return out;
}

}  // namespace polcheck::ox
