#include "qfan/io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace qfan {

namespace {

using nlohmann::json;

/* Minimal TOML subset: top-level `key = value` with integers and (nested)
 * integer arrays; `#` comments; arrays may span lines.  Enough for fan files
 * and strict about everything else. */
class TomlScanner {
public:
    explicit TomlScanner(const std::string& text) : s_(text) {}

    std::map<std::string, json> parse()
    {
        std::map<std::string, json> out;
        skip_space();
        while (pos_ < s_.size()) {
            std::string key = parse_key();
            skip_inline();
            expect('=');
            skip_inline();
            out[key] = parse_value();
            skip_space();
        }
        return out;
    }

private:
    void fail(const std::string& what)
    {
        throw Error("SchemaError", what + " at line " + std::to_string(line_));
    }
    void skip_inline()
    {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '#')
            while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
    }
    void skip_space()
    {
        for (;;) {
            skip_inline();
            if (pos_ < s_.size() && s_[pos_] == '\n') {
                ++line_;
                ++pos_;
                continue;
            }
            if (pos_ < s_.size() && s_[pos_] == '\r') {
                ++pos_;
                continue;
            }
            break;
        }
    }
    void expect(char c)
    {
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string parse_key()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                    s_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected key");
        return s_.substr(start, pos_ - start);
    }
    json parse_value()
    {
        skip_space();
        if (pos_ >= s_.size()) fail("expected value");
        if (s_[pos_] == '[') {
            ++pos_;
            json arr = json::array();
            skip_space();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return arr;
            }
            for (;;) {
                arr.push_back(parse_value());
                skip_space();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    skip_space();
                    if (pos_ < s_.size() && s_[pos_] == ']') {  // trailing comma
                        ++pos_;
                        return arr;
                    }
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == ']') {
                    ++pos_;
                    return arr;
                }
                fail("expected ',' or ']'");
            }
        }
        // integer
        std::size_t start = pos_;
        if (s_[pos_] == '-' || s_[pos_] == '+') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || (pos_ - start == 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
            fail("expected integer or array");
        return json(std::stoll(s_.substr(start, pos_ - start)));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

IVec to_ivec(const json& a, const std::string& field)
{
    if (!a.is_array()) throw Error("SchemaError", field + " must be an array");
    IVec v;
    for (const auto& x : a) {
        if (!x.is_number_integer()) throw Error("SchemaError", field + " must hold integers");
        v.push_back(Int(x.get<long long>()));
    }
    return v;
}

FanFile from_fields(const std::map<std::string, json>& fields)
{
    FanFile out;
    auto need = [&](const std::string& key) -> const json& {
        auto it = fields.find(key);
        if (it == fields.end()) throw Error("SchemaError", "missing field \"" + key + "\"");
        return it->second;
    };
    const json& rank = need("rank");
    if (!rank.is_number_integer() || rank.get<long long>() < 1)
        throw Error("SchemaError", "rank must be a positive integer");
    out.fan.n = static_cast<int>(rank.get<long long>());

    const json& rays = need("rays");
    if (!rays.is_array() || rays.empty()) throw Error("SchemaError", "rays must be a nonempty array");
    for (const auto& ray : rays) out.fan.rays.push_back(to_ivec(ray, "rays"));

    const json& cones = need("max_cones");
    if (!cones.is_array() || cones.empty())
        throw Error("SchemaError", "max_cones must be a nonempty array");
    for (const auto& cone : cones) {
        if (!cone.is_array()) throw Error("SchemaError", "max_cones entries must be arrays");
        std::vector<int> c;
        for (const auto& x : cone) {
            if (!x.is_number_integer() || x.get<long long>() < 1)
                throw Error("SchemaError", "max_cones hold 1-based ray indices");
            c.push_back(static_cast<int>(x.get<long long>()) - 1);
        }
        std::sort(c.begin(), c.end());
        out.fan.max_cones.push_back(c);
    }

    auto it = fields.find("nef_basis");
    if (it != fields.end()) {
        IMat nb;
        if (!it->second.is_array()) throw Error("SchemaError", "nef_basis must be an array");
        for (const auto& row : it->second) nb.push_back(to_ivec(row, "nef_basis"));
        out.nef_basis = nb;
    }
    return out;
}

}  // namespace

FanFile parse_fan_text(const std::string& text, bool toml)
{
    if (toml) {
        TomlScanner scanner(text);
        return from_fields(scanner.parse());
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("SchemaError", "invalid JSON");
    if (!j.is_object()) throw Error("SchemaError", "top level must be an object");
    std::map<std::string, json> fields;
    for (auto& [k, v] : j.items()) fields[k] = v;
    return from_fields(fields);
}

FanFile parse_fan_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    bool toml = path.size() >= 5 && path.substr(path.size() - 5) == ".toml";
    return parse_fan_text(ss.str(), toml);
}

}  // namespace qfan
