#include "blaschke2d/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "blaschke2d/errors.hpp"

namespace blaschke2d {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

// RFC-style CSV quoting, applied only when the cell needs it.
std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

Report Report::object() {
    Report r;
    r.kind_ = Kind::Object;
    return r;
}

Report Report::array() {
    Report r;
    r.kind_ = Kind::Array;
    return r;
}

Report Report::str(std::string v) {
    Report r;
    r.kind_ = Kind::String;
    r.string_ = std::move(v);
    return r;
}

Report Report::number(double v) {
    Report r;
    r.kind_ = Kind::Double;
    r.double_ = v;
    return r;
}

Report Report::integer(long long v) {
    Report r;
    r.kind_ = Kind::Int;
    r.int_ = v;
    return r;
}

Report Report::uinteger(std::uint64_t v) {
    Report r;
    r.kind_ = Kind::UInt;
    r.uint_ = v;
    return r;
}

Report Report::boolean(bool v) {
    Report r;
    r.kind_ = Kind::Bool;
    r.bool_ = v;
    return r;
}

Report& Report::set(const std::string& key, Report v) {
    if (kind_ != Kind::Object) throw PreconditionViolation("set() on a non-object report node");
    for (auto& [k, existing] : fields_) {
        if (k == key) {
            existing = std::move(v);
            return *this;
        }
    }
    fields_.emplace_back(key, std::move(v));
    return *this;
}

Report& Report::set(const std::string& key, const std::string& v) { return set(key, str(v)); }
Report& Report::set(const std::string& key, const char* v) { return set(key, str(v)); }
Report& Report::set(const std::string& key, double v) { return set(key, number(v)); }
Report& Report::set(const std::string& key, long long v) { return set(key, integer(v)); }
Report& Report::set(const std::string& key, int v) { return set(key, integer(v)); }
Report& Report::set(const std::string& key, std::uint64_t v) { return set(key, uinteger(v)); }
Report& Report::set(const std::string& key, bool v) { return set(key, boolean(v)); }

Report& Report::push(Report v) {
    if (kind_ != Kind::Array) throw PreconditionViolation("push() on a non-array report node");
    items_.push_back(std::move(v));
    return *this;
}

Report& Report::push(const std::string& v) { return push(str(v)); }
Report& Report::push(double v) { return push(number(v)); }
Report& Report::push(long long v) { return push(integer(v)); }
Report& Report::push(int v) { return push(integer(v)); }

const Report* Report::find(const std::string& key) const {
    if (kind_ != Kind::Object) return nullptr;
    for (const auto& [k, v] : fields_)
        if (k == key) return &v;
    return nullptr;
}

void Report::set_table(std::vector<std::string> header,
                       std::vector<std::vector<std::string>> rows) {
    table_header_ = std::move(header);
    table_rows_ = std::move(rows);
}

void Report::write_scalar(std::string& out) const {
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::UInt: out += std::to_string(uint_); break;
        case Kind::Double: {
            std::string rendered = format_double(double_);
            // Non-finite doubles are not valid JSON tokens; quote them.
            if (rendered == "nan" || rendered == "inf" || rendered == "-inf")
                append_json_string(out, rendered);
            else
                out += rendered;
            break;
        }
        case Kind::String: append_json_string(out, string_); break;
        case Kind::Array:
        case Kind::Object: break;  // handled by write_json
    }
}

void Report::write_json(std::string& out, int indent) const {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (kind_) {
        case Kind::Object: {
            if (fields_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                out += inner;
                append_json_string(out, fields_[i].first);
                out += ": ";
                fields_[i].second.write_json(out, indent + 1);
                if (i + 1 < fields_.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += '}';
            return;
        }
        case Kind::Array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            bool all_scalar = true;
            for (const auto& item : items_)
                if (!item.scalar()) all_scalar = false;
            if (all_scalar) {
                out += '[';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i > 0) out += ", ";
                    items_[i].write_scalar(out);
                }
                out += ']';
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += inner;
                items_[i].write_json(out, indent + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += ']';
            return;
        }
        default: write_scalar(out); return;
    }
}

std::string Report::to_json() const {
    std::string out;
    write_json(out, 0);
    out += '\n';
    return out;
}

void Report::flatten(const std::string& path,
                     std::vector<std::pair<std::string, std::string>>& out) const {
    switch (kind_) {
        case Kind::Object:
            for (const auto& [k, v] : fields_)
                v.flatten(path.empty() ? k : path + "." + k, out);
            return;
        case Kind::Array:
            for (std::size_t i = 0; i < items_.size(); ++i)
                items_[i].flatten(path + "[" + std::to_string(i) + "]", out);
            return;
        default: {
            std::string value;
            if (kind_ == Kind::String)
                value = string_;
            else if (kind_ == Kind::Double)
                value = format_double(double_);
            else
                write_scalar(value);  // null/bool/int render as their JSON token
            out.emplace_back(path, value);
            return;
        }
    }
}

std::string Report::to_csv() const {
    std::string out;
    if (has_table()) {
        for (std::size_t i = 0; i < table_header_.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_cell(table_header_[i]);
        }
        out += '\n';
        for (const auto& row : table_rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i > 0) out += ',';
                out += csv_cell(row[i]);
            }
            out += '\n';
        }
        return out;
    }
    out += "key,value\n";
    std::vector<std::pair<std::string, std::string>> flat;
    flatten("", flat);
    for (const auto& [k, v] : flat) {
        out += csv_cell(k);
        out += ',';
        out += csv_cell(v);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace blaschke2d
