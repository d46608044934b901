#include "specgame/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace specgame {

std::string dtos(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw IoError("cannot parse number: '" + token + "'");
    }
    return out;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line != "\r") lines.push_back(line);
    }
    return lines;
}

constexpr const char* kFrontierHeader = "gamma,epsilon,acc,cov,gamma_ach,eps_ach,round_tag";
constexpr const char* kTraceHeader =
    "round,mover,gamma,epsilon,acc,cov,gamma_ach,eps_ach,loss_builder,loss_fair,loss_priv,"
    "penalty_fair,penalty_priv,eta_fair,eta_priv,eta_build";

}  // namespace

std::string frontier_csv(const ResultSet& points) {
    std::ostringstream out;
    out << kFrontierHeader << "\n";
    for (const auto& p : points.points()) {
        out << dtos(p.strategy.fairness_param) << ',' << dtos(p.strategy.privacy_param) << ','
            << dtos(p.objectives.accuracy) << ',' << dtos(p.objectives.coverage) << ','
            << dtos(p.objectives.disparity_achieved) << ',' << dtos(p.objectives.privacy_achieved)
            << ',' << p.round_tag << "\n";
    }
    return out.str();
}

ResultSet parse_frontier_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty()) throw IoError("frontier CSV: empty file");
    if (split_csv_line(lines.front()) != split_csv_line(kFrontierHeader)) {
        throw IoError("frontier CSV: header must be '" + std::string(kFrontierHeader) + "'");
    }
    ResultSet out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv_line(lines[i]);
        if (cells.size() != 7) {
            throw IoError("frontier CSV: line " + std::to_string(i + 1) + " has " +
                          std::to_string(cells.size()) + " fields, expected 7");
        }
        EvalPoint p;
        p.strategy.fairness_param = parse_double(cells[0]);
        p.strategy.privacy_param = parse_double(cells[1]);
        p.objectives.accuracy = parse_double(cells[2]);
        p.objectives.coverage = parse_double(cells[3]);
        p.objectives.disparity_achieved = parse_double(cells[4]);
        p.objectives.privacy_achieved = parse_double(cells[5]);
        p.round_tag = static_cast<int>(parse_double(cells[6]));
        out.add(p);
    }
    return out;
}

void write_frontier_csv(const std::string& path, const ResultSet& points) {
    write_file(path, frontier_csv(points));
}

ResultSet read_frontier_csv(const std::string& path) {
    return parse_frontier_csv(read_file(path));
}

std::string trace_csv(const GameTrace& trace) {
    std::ostringstream out;
    out << kTraceHeader << "\n";
    for (const auto& r : trace.records) {
        out << r.t << ',' << mover_name(r.mover) << ',' << dtos(r.strategy.fairness_param) << ','
            << dtos(r.strategy.privacy_param) << ',' << dtos(r.objectives.accuracy) << ','
            << dtos(r.objectives.coverage) << ',' << dtos(r.objectives.disparity_achieved) << ','
            << dtos(r.objectives.privacy_achieved) << ',' << dtos(r.loss_builder) << ','
            << dtos(r.loss_fair) << ',' << dtos(r.loss_priv) << ',' << dtos(r.penalty_fair) << ','
            << dtos(r.penalty_priv) << ',' << dtos(r.eta_fair) << ',' << dtos(r.eta_priv) << ','
            << dtos(r.eta_build) << "\n";
    }
    return out.str();
}

void write_trace_csv(const std::string& path, const GameTrace& trace) {
    write_file(path, trace_csv(trace));
}

std::vector<PredictionRecord> parse_prediction_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty()) throw IoError("prediction CSV: empty file");
    if (split_csv_line(lines.front()) != std::vector<std::string>{"predicted_class", "subgroup"}) {
        throw IoError("prediction CSV: header must be 'predicted_class,subgroup'");
    }
    std::vector<PredictionRecord> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv_line(lines[i]);
        if (cells.size() != 2) {
            throw IoError("prediction CSV: line " + std::to_string(i + 1) +
                          " must have 2 fields");
        }
        out.push_back({static_cast<int>(parse_double(cells[0])),
                       static_cast<int>(parse_double(cells[1]))});
    }
    return out;
}

std::vector<PredictionRecord> read_prediction_csv(const std::string& path) {
    return parse_prediction_csv(read_file(path));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace specgame
