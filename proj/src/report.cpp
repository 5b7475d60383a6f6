#include "eiszero/report.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace eiszero {

using nlohmann::json;

namespace {

json locations_to_json(const std::vector<ZeroLocation>& zs)
{
    json a = json::array();
    for (const auto& z : zs)
        a.push_back({{"t", z.t}, {"lo", z.lo}, {"hi", z.hi}, {"sign_lo", z.sign_lo}, {"sign_hi", z.sign_hi}});
    return a;
}

std::vector<ZeroLocation> locations_from_json(const json& a)
{
    std::vector<ZeroLocation> out;
    for (const auto& z : a)
        out.push_back({z.at("lo").get<double>(), z.at("hi").get<double>(), z.at("t").get<double>(),
                       z.at("sign_lo").get<int>(), z.at("sign_hi").get<int>()});
    return out;
}

json findings_to_json(const std::vector<Finding>& fs)
{
    json a = json::array();
    for (const auto& f : fs)
        a.push_back({{"kind", f.kind}, {"detail", f.detail}, {"failure", f.failure}});
    return a;
}

std::vector<Finding> findings_from_json(const json& a)
{
    std::vector<Finding> out;
    for (const auto& f : a)
        out.push_back({f.at("kind").get<std::string>(), f.at("detail").get<std::string>(), f.at("failure").get<bool>()});
    return out;
}

json predicted_to_json(const PredictedCounts& p)
{
    return {{"N", p.N},   {"N_prime", p.N_prime}, {"T", p.T}, {"T_prime", p.T_prime}, {"sp", p.sp}, {"total_nontrivial", p.total_nontrivial},
            {"A", p.predicted_A}, {"B", p.predicted_B}};
}

PredictedCounts predicted_from_json(const json& j)
{
    PredictedCounts p;
    p.N = j.at("N");
    p.N_prime = j.at("N_prime");
    p.T = j.at("T");
    p.T_prime = j.at("T_prime");
    p.sp = j.at("sp");
    p.total_nontrivial = j.at("total_nontrivial");
    p.predicted_A = j.at("A");
    p.predicted_B = j.at("B");
    return p;
}

}  // namespace

json report_to_json(const ZeroCountReport& r)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = r.wp.k;
    j["l"] = r.wp.l;
    j["A"] = r.A;
    j["B"] = r.B;
    j["v_i"] = r.trivial.v_i;
    j["v_rho"] = r.trivial.v_rho;
    j["measured_orders"] = r.measured ? json{{"v_i", r.measured->v_i}, {"v_rho", r.measured->v_rho}} : json(nullptr);
    j["predicted"] = predicted_to_json(r.predicted);
    j["valence_ok"] = r.valence_ok;
    j["y_max"] = r.y_max;
    j["arc_zeros"] = locations_to_json(r.arc_zeros);
    j["side_zeros"] = locations_to_json(r.side_zeros);
    j["findings"] = findings_to_json(r.findings);
    j["error"] = r.error;
    j["failed"] = r.failed();
    return j;
}

ZeroCountReport report_from_json(const json& j)
{
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            throw std::invalid_argument("report: unsupported schema_version");
        ZeroCountReport r;
        r.wp = WeightPair::make(j.at("k"), j.at("l"), true);
        r.A = j.at("A");
        r.B = j.at("B");
        r.trivial = {j.at("v_i").get<int>(), j.at("v_rho").get<int>()};
        const json& m = j.at("measured_orders");
        if (!m.is_null())
            r.measured = TrivialOrders{m.at("v_i").get<int>(), m.at("v_rho").get<int>()};
        r.predicted = predicted_from_json(j.at("predicted"));
        r.valence_ok = j.at("valence_ok");
        r.y_max = j.at("y_max");
        r.arc_zeros = locations_from_json(j.at("arc_zeros"));
        r.side_zeros = locations_from_json(j.at("side_zeros"));
        r.findings = findings_from_json(j.at("findings"));
        r.error = j.at("error");
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

void write_ndjson(std::ostream& os, std::span<const ZeroCountReport> reports)
{
    for (const auto& r : reports)
        os << report_to_json(r).dump() << '\n';
}

std::vector<ZeroCountReport> read_ndjson(std::istream& is)
{
    std::vector<ZeroCountReport> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("report: ") + e.what());
        }
        out.push_back(report_from_json(j));
    }
    return out;
}

namespace {

const std::vector<std::string> kCsvColumns = {
    "schema_version", "k", "l", "A", "B", "v_i", "v_rho", "measured_orders", "predicted", "valence_ok",
    "y_max", "arc_zeros", "side_zeros", "findings", "error", "failed"};

std::string csv_cell(const json& v)
{
    if (v.is_string())
        return csv_quote(v.get<std::string>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number())
        return v.dump();
    return csv_quote(v.dump());
}

}  // namespace

std::string csv_quote(const std::string& field)
{
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw std::invalid_argument("csv: unterminated quoted field");
    out.push_back(std::move(cur));
    return out;
}

void write_csv(std::ostream& os, std::span<const ZeroCountReport> reports)
{
    for (size_t i = 0; i < kCsvColumns.size(); ++i)
        os << (i ? "," : "") << kCsvColumns[i];
    os << '\n';
    for (const auto& r : reports) {
        const json j = report_to_json(r);
        for (size_t i = 0; i < kCsvColumns.size(); ++i)
            os << (i ? "," : "") << csv_cell(j.at(kCsvColumns[i]));
        os << '\n';
    }
}

std::vector<ZeroCountReport> read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("csv: missing header");
    if (split_csv_line(line) != kCsvColumns)
        throw std::invalid_argument("csv: unexpected header");
    std::vector<ZeroCountReport> out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != kCsvColumns.size())
            throw std::invalid_argument("csv: wrong number of fields");
        json j;
        for (size_t i = 0; i < cells.size(); ++i) {
            const std::string& name = kCsvColumns[i];
            if (name == "error")
                j[name] = cells[i];
            else
                try {
                    j[name] = json::parse(cells[i]);
                } catch (const json::exception& e) {
                    throw std::invalid_argument("csv: bad field " + name);
                }
        }
        out.push_back(report_from_json(j));
    }
    return out;
}

RangeSummary summarize(std::span<const ZeroCountReport> reports)
{
    RangeSummary s;
    for (const auto& r : reports) {
        ++s.pairs;
        if (!r.error.empty())
            ++s.errors;
        else if (!r.valence_ok)
            ++s.valence_failures;
        for (const auto& f : r.findings) {
            if (f.kind == "interior_zero")
                ++s.interior_zeros;
            else if (f.kind == "order")
                ++s.order_mismatches;
            else if (f.failure && (f.kind == "arc_count" || f.kind == "side_count"))
                ++s.count_mismatches;
        }
        if (r.failed())
            ++s.failed;
    }
    return s;
}

json summary_to_json(const RangeSummary& s)
{
    return {{"summary", true},
            {"pairs", s.pairs},
            {"errors", s.errors},
            {"valence_failures", s.valence_failures},
            {"count_mismatches", s.count_mismatches},
            {"order_mismatches", s.order_mismatches},
            {"interior_zeros", s.interior_zeros},
            {"failed", s.failed}};
}

}  // namespace eiszero
