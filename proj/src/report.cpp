#include "tritime/report.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tritime/errors.hpp"
#include "tritime_schema.hpp"

namespace tritime::report {

using nlohmann::ordered_json;

bool Report::all_pass() const {
    for (const auto& c : claims)
        if (!c.verdict) return false;
    return true;
}

const Claim* Report::find(const std::string& id) const {
    for (const auto& c : claims)
        if (c.id == id) return &c;
    return nullptr;
}

Claim from_residual(const fieldcheck::ResidualReport& r) {
    return {r.id, r.anchor, r.verdict, r.max_residual, r.convention, r.notes};
}

std::vector<Claim> aggregate(const std::vector<fieldcheck::ResidualReport>& reports, const std::string& scope) {
    struct Acc {
        Claim claim;
        std::size_t cases = 0;
        std::size_t failed = 0;
        std::size_t blind = 0;
        bool mixed = false;
        bool settled = false;
        std::string first_failure;
    };
    std::vector<Acc> out;
    std::map<std::string, std::size_t> index;
    for (const auto& r : reports) {
        auto it = index.find(r.id);
        if (it == index.end()) {
            index[r.id] = out.size();
            out.push_back({from_residual(r), 0, 0, 0, false, false, {}});
            it = index.find(r.id);
        }
        Acc& a = out[it->second];
        ++a.cases;
        if (!r.verdict) {
            ++a.failed;
            if (a.first_failure.empty()) a.first_failure = r.notes;
        }
        a.claim.verdict = a.claim.verdict && r.verdict;
        if (!(a.claim.max_residual >= r.max_residual)) a.claim.max_residual = r.max_residual;
        // A case in which every candidate vanishes cannot tell the conventions apart.
        bool discriminating = r.candidates.size() < 2 || r.vanishing_count() < static_cast<int>(r.candidates.size());
        if (!discriminating) {
            ++a.blind;
        } else if (!a.settled) {
            a.claim.convention = r.convention;
            a.claim.notes = r.notes;
            a.settled = true;
        } else if (r.convention != a.claim.convention) {
            a.mixed = true;
        }
    }
    std::vector<Claim> claims;
    for (auto& a : out) {
        if (a.cases > 1) {
            std::ostringstream os;
            os << a.cases << " cases";
            if (!scope.empty()) os << " (" << scope << ")";
            if (a.failed) os << ", " << a.failed << " failed";
            if (a.blind) os << ", " << a.blind << " in which every candidate vanishes";
            if (a.mixed) {
                os << "; conventions differ between cases";
                a.claim.convention = "mixed";
            }
            os << ". " << (a.failed ? a.first_failure : a.claim.notes);
            a.claim.notes = os.str();
        }
        claims.push_back(std::move(a.claim));
    }
    return claims;
}

std::string to_json(const Report& r) {
    ordered_json j;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["claims"] = ordered_json::array();
    for (const auto& c : r.claims) {
        ordered_json o;
        o["id"] = c.id;
        o["paper_anchor"] = c.paper_anchor;
        o["verdict"] = c.verdict;
        if (std::isfinite(c.max_residual)) o["max_residual"] = c.max_residual;
        else o["max_residual"] = nullptr;
        o["convention"] = c.convention;
        o["notes"] = c.notes;
        j["claims"].push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
    try {
        auto j = ordered_json::parse(text);
        Report r;
        r.version = j.at("version").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& o : j.at("claims")) {
            Claim c;
            c.id = o.at("id").get<std::string>();
            c.paper_anchor = o.at("paper_anchor").get<std::string>();
            c.verdict = o.at("verdict").get<bool>();
            c.max_residual = o.at("max_residual").is_null() ? std::nan("") : o.at("max_residual").get<double>();
            c.convention = o.at("convention").get<std::string>();
            c.notes = o.at("notes").get<std::string>();
            r.claims.push_back(std::move(c));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

const std::string& schema_text() {
    static const std::string text = detail::kSchema;
    return text;
}

}  // namespace tritime::report
