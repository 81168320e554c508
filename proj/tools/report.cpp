#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace zh::cli {

void VerificationReport::finalize() {
    auto key = [](const Detail& d) {
        std::string k = d.equation;
        for (const auto& [a, b] : d.inputs) k += "|" + a + "=" + b;
        return k;
    };
    std::stable_sort(details.begin(), details.end(),
                     [&](const Detail& a, const Detail& b) { return key(a) < key(b); });
    if (status == Status::resource_limit) return;
    status = Status::pass;
    for (const Detail& d : details)
        if (!d.pass) {
            status = Status::fail;
            break;
        }
}

std::string to_string(VerificationReport::Status s) {
    switch (s) {
        case VerificationReport::Status::pass: return "pass";
        case VerificationReport::Status::fail: return "fail";
        case VerificationReport::Status::resource_limit: return "resource-limit";
    }
    return "unknown";
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["task"] = report.task;
    j["params"] = report.params;
    j["status"] = to_string(report.status);
    j["elapsed_ms"] = report.elapsed_ms;
    nlohmann::json details = nlohmann::json::array();
    for (const auto& d : report.details) {
        nlohmann::json jd;
        jd["equation"] = d.equation;
        jd["inputs"] = d.inputs;
        jd["expected"] = d.expected;
        jd["actual"] = d.actual;
        jd["exact"] = d.exact;
        jd["pass"] = d.pass;
        details.push_back(std::move(jd));
    }
    j["details"] = std::move(details);
    return j;
}

nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

VerificationReport report_from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.task = j.at("task").get<std::string>();
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
        r.params[it.key()] = it.value().get<std::string>();
    std::string s = j.at("status").get<std::string>();
    r.status = s == "pass"            ? VerificationReport::Status::pass
               : s == "resource-limit" ? VerificationReport::Status::resource_limit
                                       : VerificationReport::Status::fail;
    r.elapsed_ms = j.value("elapsed_ms", 0);
    for (const auto& jd : j.at("details")) {
        VerificationReport::Detail d;
        d.equation = jd.value("equation", "");
        if (jd.contains("inputs"))
            for (auto it = jd["inputs"].begin(); it != jd["inputs"].end(); ++it)
                d.inputs[it.key()] = it.value().get<std::string>();
        d.expected = jd.value("expected", "");
        d.actual = jd.value("actual", "");
        d.exact = jd.value("exact", true);
        d.pass = jd.value("pass", false);
        r.details.push_back(std::move(d));
    }
    return r;
}

std::string to_text(const VerificationReport& report) {
    std::ostringstream os;
    os << "[" << to_string(report.status) << "] " << report.task;
    if (!report.params.empty()) {
        os << " (";
        bool first = true;
        for (const auto& [k, v] : report.params) {
            if (!first) os << ", ";
            os << k << "=" << v;
            first = false;
        }
        os << ")";
    }
    os << "  " << report.elapsed_ms << " ms\n";
    std::size_t shown = 0, failed = 0;
    for (const auto& d : report.details)
        if (!d.pass) ++failed;
    for (const auto& d : report.details) {
        // text mode shows failures plus a sample of passing records
        if (d.pass && shown >= 8) continue;
        if (d.pass) ++shown;
        os << "  " << (d.pass ? "ok  " : "FAIL") << " " << d.equation << " ";
        for (const auto& [k, v] : d.inputs) os << k << "=" << v << " ";
        os << "expected=" << d.expected << " actual=" << d.actual
           << (d.exact ? " (exact)" : " (tolerance)") << "\n";
    }
    if (report.details.size() > shown + failed)
        os << "  ... " << (report.details.size() - shown - failed)
           << " more passing records\n";
    return os.str();
}

std::string to_text(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) out += to_text(r);
    return out;
}

int exit_code(const std::vector<VerificationReport>& reports) {
    bool resource = false;
    for (const auto& r : reports) {
        if (r.status == VerificationReport::Status::fail) return 1;
        if (r.status == VerificationReport::Status::resource_limit) resource = true;
    }
    return resource ? 3 : 0;
}

} // namespace zh::cli
