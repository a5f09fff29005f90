#include "swts/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "swts/errors.hpp"
#include "swts/format.hpp"

namespace swts {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_real(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParameterError("trajectory line " + std::to_string(line_no) + ": cannot parse '" + field + "'");
    }
    return v;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".json");
    return p;
}

RewardTrajectory read_trajectory_csv(std::istream& csv, const RewardFamily& family) {
    std::string line;
    if (!std::getline(csv, line)) throw ParameterError("trajectory CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_commas(line);
    if (header.size() < 3 || header[0] != "t") throw ParameterError("trajectory header must be t,mu_1,...,mu_K");
    const std::size_t arms = header.size() - 1;
    for (std::size_t i = 0; i < arms; ++i) {
        if (header[i + 1] != "mu_" + std::to_string(i + 1)) {
            throw ParameterError("trajectory header column " + std::to_string(i + 2) + " must be mu_" +
                                 std::to_string(i + 1));
        }
    }
    std::vector<std::vector<double>> means(arms);
    std::size_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != arms + 1) {
            throw ParameterError("trajectory line " + std::to_string(line_no) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " + std::to_string(arms + 1));
        }
        const double t = parse_real(fields[0], line_no);
        if (t != static_cast<double>(means[0].size() + 1)) {
            throw ParameterError("trajectory line " + std::to_string(line_no) + ": rounds must be 1, 2, 3, ...");
        }
        for (std::size_t i = 0; i < arms; ++i) means[i].push_back(parse_real(fields[i + 1], line_no));
    }
    return RewardTrajectory(std::move(means), family);
}

RewardFamily parse_family_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("family metadata is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParameterError("family metadata must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "family" && key != "proxy_variance" && key != "noise") {
            throw ParameterError("unknown family metadata key '" + key + "'");
        }
    }
    const std::string kind = j.value("family", "");
    if (kind == "bernoulli") return RewardFamily::bernoulli();
    if (kind != "subgaussian") throw ParameterError("family must be \"bernoulli\" or \"subgaussian\"");
    if (!j.contains("proxy_variance") || !j["proxy_variance"].is_number()) {
        throw ParameterError("subgaussian family needs a numeric proxy_variance");
    }
    const std::string noise = j.value("noise", "gaussian");
    NoiseKind nk{};
    if (noise == "gaussian") {
        nk = NoiseKind::gaussian;
    } else if (noise == "bounded") {
        nk = NoiseKind::bounded;
    } else {
        throw ParameterError("noise must be \"gaussian\" or \"bounded\"");
    }
    const double pv = j["proxy_variance"].get<double>();
    if (!(pv >= 0.0)) throw ParameterError("proxy_variance must be non-negative");
    return RewardFamily::subgaussian(pv, nk);
}

std::string family_json(const RewardFamily& family) {
    nlohmann::ordered_json j;
    if (family.kind == FamilyKind::bernoulli) {
        j["family"] = "bernoulli";
    } else {
        j["family"] = "subgaussian";
        j["proxy_variance"] = family.proxy_variance;
        j["noise"] = family.noise == NoiseKind::gaussian ? "gaussian" : "bounded";
    }
    return j.dump();
}

RewardTrajectory load_trajectory(const std::filesystem::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw IoError("cannot open trajectory file " + csv.string());
    const auto meta = sidecar_path(csv);
    std::ifstream meta_in(meta, std::ios::binary);
    if (!meta_in) throw IoError("cannot open trajectory metadata " + meta.string());
    std::stringstream buf;
    buf << meta_in.rdbuf();
    try {
        const RewardFamily family = parse_family_json(buf.str());
        return read_trajectory_csv(in, family);
    } catch (const ParameterError& e) {
        throw ParameterError(csv.string() + ": " + e.what());
    }
}

void write_trajectory_csv(std::ostream& out, const RewardTrajectory& traj) {
    out << 't';
    for (std::size_t i = 0; i < traj.arms(); ++i) out << ",mu_" << (i + 1);
    out << '\n';
    for (std::size_t t = 1; t <= traj.horizon(); ++t) {
        out << t;
        for (std::size_t i = 0; i < traj.arms(); ++i) out << ',' << format_real(traj.mean(i, t));
        out << '\n';
    }
}

void save_trajectory(const std::filesystem::path& csv, const RewardTrajectory& traj) {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw IoError("cannot write trajectory file " + csv.string());
    write_trajectory_csv(out, traj);
    std::ofstream meta(sidecar_path(csv), std::ios::binary);
    if (!meta) throw IoError("cannot write trajectory metadata " + sidecar_path(csv).string());
    meta << family_json(traj.family()) << '\n';
    if (!out || !meta) throw IoError("write failed for " + csv.string());
}

}  // namespace swts
