#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nilcone {

enum class CheckStatus { pass, fail, flagged };

inline const char* status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "flagged";
    }
}

// One verification record: a stable id, the mathematical statement being
// checked (the anchor), a verdict, and witness values for audit.
struct CheckRecord {
    std::string id;
    std::string anchor;
    CheckStatus status = CheckStatus::fail;
    std::string witness;
};

struct Report {
    std::string case_name;
    std::string suite;
    std::vector<CheckRecord> records;

    void add(const std::string& id, const std::string& anchor, bool ok,
             const std::string& witness = "") {
        records.push_back({id, anchor, ok ? CheckStatus::pass : CheckStatus::fail, witness});
    }
    void flag(const std::string& id, const std::string& anchor, const std::string& witness) {
        records.push_back({id, anchor, CheckStatus::flagged, witness});
    }
    void merge(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }

    int count(CheckStatus s) const {
        int n = 0;
        for (auto& r : records) n += r.status == s;
        return n;
    }
    bool any_fail() const { return count(CheckStatus::fail) > 0; }
    bool any_flagged() const { return count(CheckStatus::flagged) > 0; }
    // 0 all pass, 1 any fail, 3 flagged-only
    int exit_code() const { return any_fail() ? 1 : (any_flagged() ? 3 : 0); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json doc;
        doc["case"] = case_name;
        doc["suite"] = suite;
        doc["summary"] = {{"pass", count(CheckStatus::pass)},
                          {"fail", count(CheckStatus::fail)},
                          {"flagged", count(CheckStatus::flagged)}};
        doc["checks"] = nlohmann::ordered_json::array();
        for (auto& r : records)
            doc["checks"].push_back({{"id", r.id},
                                     {"anchor", r.anchor},
                                     {"status", status_str(r.status)},
                                     {"witness", r.witness}});
        return doc;
    }

    std::string to_text() const {
        std::string out = "case " + case_name + ", suite " + suite + "\n";
        for (auto& r : records) {
            out += "  [" + std::string(status_str(r.status)) + "] " + r.id + ": " + r.anchor;
            if (!r.witness.empty()) out += "  -- " + r.witness;
            out += "\n";
        }
        out += "summary: " + std::to_string(count(CheckStatus::pass)) + " pass, " +
               std::to_string(count(CheckStatus::fail)) + " fail, " +
               std::to_string(count(CheckStatus::flagged)) + " flagged\n";
        return out;
    }
};

} // namespace nilcone
