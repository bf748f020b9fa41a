#include "rfskit/dataset_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "rfskit/errors.hpp"

namespace rfskit {

namespace {

using nlohmann::json;

LabeledPattern parse_line(const std::string& line, long line_no) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ValidationError("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
    auto fail = [&](const std::string& what) -> ValidationError {
        return ValidationError("dataset line " + std::to_string(line_no) + ": " + what);
    };
    if (!obj.is_object()) throw fail("expected a JSON object");
    if (!obj.contains("id") || !obj["id"].is_string()) throw fail("missing string 'id'");
    if (!obj.contains("points") || !obj["points"].is_array())
        throw fail("missing array 'points'");

    LabeledPattern item;
    item.id = obj["id"].get<std::string>();
    if (obj.contains("label") && !obj["label"].is_null()) {
        if (!obj["label"].is_number_integer()) throw fail("'label' must be an integer or null");
        item.label = obj["label"].get<int>();
    }

    const json& pts = obj["points"];
    if (pts.empty()) {
        item.pattern = PointPattern::empty(0); // dimension resolved by the dataset
        return item;
    }
    if (!pts[0].is_array() || pts[0].empty()) throw fail("points must be non-empty arrays");
    const Eigen::Index d = static_cast<Eigen::Index>(pts[0].size());
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(pts.size()), d);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const json& p = pts[static_cast<size_t>(i)];
        if (!p.is_array() || static_cast<Eigen::Index>(p.size()) != d)
            throw fail("point " + std::to_string(i) + " has inconsistent dimension");
        for (Eigen::Index j = 0; j < d; ++j) {
            const json& v = p[static_cast<size_t>(j)];
            if (!v.is_number()) throw fail("point coordinates must be numbers");
            rows(i, j) = v.get<double>();
        }
    }
    item.pattern = PointPattern(std::move(rows));
    return item;
}

} // namespace

Dataset parse_dataset_jsonl(std::istream& in) {
    std::vector<LabeledPattern> items;
    std::set<std::string> ids;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        items.push_back(parse_line(line, line_no));
        if (!ids.insert(items.back().id).second)
            throw ValidationError("dataset line " + std::to_string(line_no) + ": duplicate id '" +
                                  items.back().id + "'");
    }
    if (items.empty()) throw ValidationError("dataset: no records");
    return make_dataset(std::move(items));
}

Dataset read_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open dataset file: " + path);
    try {
        return parse_dataset_jsonl(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void emit_dataset_jsonl(const Dataset& data, std::ostream& out) {
    for (const auto& item : data.items) {
        json obj;
        obj["id"] = item.id;
        obj["label"] = item.label ? json(*item.label) : json(nullptr);
        json pts = json::array();
        for (long i = 0; i < item.pattern.cardinality(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < item.pattern.dim(); ++j)
                row.push_back(item.pattern.points()(i, j));
            pts.push_back(std::move(row));
        }
        obj["points"] = std::move(pts);
        out << obj.dump() << '\n';
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    fs::path tmp = (dir.empty() ? fs::path(".") : dir) /
                   (target.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ValidationError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ValidationError("cannot rename into place: " + path + " (" + ec.message() + ")");
    }
}

void write_dataset_jsonl(const Dataset& data, const std::string& path) {
    std::ostringstream out;
    emit_dataset_jsonl(data, out);
    write_text_file(path, out.str());
}

} // namespace rfskit
