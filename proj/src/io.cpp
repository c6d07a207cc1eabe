#include "perlab/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace perlab {

using nlohmann::json;

std::string poly_to_json(const Poly& p) {
    json j = json::array();
    for (int i = 0; i <= p.degree(); ++i) j.push_back(rational_string(p.coeff(i)));
    return j.dump();
}

Poly poly_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_array()) throw ValidationError("poly JSON: array expected");
    std::vector<BigRat> c;
    for (const auto& e : j) {
        if (e.is_number_integer())
            c.emplace_back(static_cast<long>(e.get<long long>()));
        else if (e.is_string())
            c.push_back(parse_rational(e.get<std::string>()));
        else
            throw ValidationError("poly JSON: coefficient must be integer or string");
    }
    return Poly::univariate(std::move(c));
}

namespace {

std::vector<BigRat> coeff_array(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ValidationError(std::string(what) + ": nonempty array expected");
    std::vector<BigRat> c;
    for (const auto& e : j) {
        if (e.is_number_integer())
            c.emplace_back(static_cast<long>(e.get<long long>()));
        else if (e.is_string())
            c.push_back(parse_rational(e.get<std::string>()));
        else
            throw ValidationError(std::string(what) + ": entries must be integers or strings");
    }
    return c;
}

RationalMap map_from_json(const json& j) {
    if (!j.contains("F") || !j.contains("G")) throw ValidationError("map JSON: F and G required");
    std::vector<BigRat> fc = coeff_array(j["F"], "map F");
    std::vector<BigRat> gc = coeff_array(j["G"], "map G");
    if (fc.size() != gc.size()) throw ValidationError("map JSON: F and G must have equal degree");
    return make_map(Poly::homogeneous(std::move(fc)), Poly::homogeneous(std::move(gc)));
}

}  // namespace

std::string map_to_json(const RationalMap& f) {
    json j;
    j["F"] = json::array();
    j["G"] = json::array();
    for (int i = 0; i <= f.degree(); ++i) {
        j["F"].push_back(f.F().coeff(i).get_num().get_str());
        j["G"].push_back(f.G().coeff(i).get_num().get_str());
    }
    return j.dump();
}

RationalMap map_from_json_text(const std::string& text) { return map_from_json(json::parse(text)); }

RationalMap map_from_json_file(const std::string& path) {
    return map_from_json_text(read_text_file(path));
}

ProductMap product_from_json_file(const std::string& path) {
    json j = json::parse(read_text_file(path));
    if (!j.is_array() || j.empty()) throw ValidationError("product map JSON: nonempty array expected");
    std::vector<RationalMap> maps;
    for (const auto& e : j) maps.push_back(map_from_json(e));
    return product_map(maps);
}

BihomCurve curve_from_json_file(const std::string& path) {
    json j = json::parse(read_text_file(path));
    if (!j.contains("bidegree") || !j.contains("coeff"))
        throw ValidationError("curve JSON: bidegree and coeff required");
    int e1 = j["bidegree"][0].get<int>();
    int e2 = j["bidegree"][1].get<int>();
    const json& m = j["coeff"];
    if (!m.is_array() || static_cast<int>(m.size()) != e1 + 1)
        throw ValidationError("curve JSON: coeff must have e1+1 rows");
    std::vector<std::vector<BigInt>> c(static_cast<size_t>(e1) + 1);
    for (int i = 0; i <= e1; ++i) {
        const json& row = m[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != e2 + 1)
            throw ValidationError("curve JSON: each row needs e2+1 entries");
        for (const auto& e : row) {
            if (e.is_number_integer())
                c[static_cast<size_t>(i)].emplace_back(static_cast<long>(e.get<long long>()));
            else if (e.is_string())
                c[static_cast<size_t>(i)].emplace_back(e.get<std::string>());
            else
                throw ValidationError("curve JSON: integer entries expected");
        }
    }
    return BihomCurve(std::move(c), e1, e2);
}

std::vector<BumpFunction> bumps_from_json_file(const std::string& path) {
    json j = json::parse(read_text_file(path));
    if (!j.is_array() || j.empty()) throw ValidationError("bumps JSON: nonempty array expected");
    std::vector<BumpFunction> out;
    for (const auto& e : j) {
        double re = e.at("center")[0].get<double>();
        double im = e.at("center")[1].get<double>();
        double r = e.at("r").get<double>();
        out.push_back(bump({re, im}, r));
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace perlab
