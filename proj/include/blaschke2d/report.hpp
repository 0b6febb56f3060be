#pragma once
// Report emission for the CLI: an insertion-ordered JSON document with fixed
// number formatting, so identical inputs always serialize to identical bytes.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace blaschke2d {

// %.15g rendering shared by every float that reaches an output file.
// Non-finite values are spelled out ("inf", "nan") so the JSON stays
// parseable; they are quoted at the JSON layer.
std::string format_double(double v);

/**
 * JSON document builder.  Objects keep keys in insertion order, doubles are
 * printed with 15 significant digits, and exact quantities (rationals,
 * surds) travel as pre-rendered strings — never as floats.
 *
 * A report may additionally carry a flat table (header + string rows); the
 * CSV rendering prefers the table when present and otherwise falls back to
 * flattened path,value pairs.  The table never appears in the JSON form.
 */
class Report {
  public:
    Report() = default;  // null

    static Report object();
    static Report array();
    static Report str(std::string v);
    static Report number(double v);
    static Report integer(long long v);
    static Report uinteger(std::uint64_t v);
    static Report boolean(bool v);

    // Object field setters; inserting an existing key replaces its value in
    // place, preserving the original position.
    Report& set(const std::string& key, Report v);
    Report& set(const std::string& key, const std::string& v);
    Report& set(const std::string& key, const char* v);
    Report& set(const std::string& key, double v);
    Report& set(const std::string& key, long long v);
    Report& set(const std::string& key, int v);
    Report& set(const std::string& key, std::uint64_t v);
    Report& set(const std::string& key, bool v);

    // Array append.
    Report& push(Report v);
    Report& push(const std::string& v);
    Report& push(double v);
    Report& push(long long v);
    Report& push(int v);

    bool is_object() const { return kind_ == Kind::Object; }
    bool is_array() const { return kind_ == Kind::Array; }
    const Report* find(const std::string& key) const;  // objects only; null if absent

    // CSV side channel: one flat table of pre-rendered cells.
    void set_table(std::vector<std::string> header,
                   std::vector<std::vector<std::string>> rows);
    bool has_table() const { return !table_header_.empty(); }

    // Pretty-printed (two-space indent) with a trailing newline.  Arrays of
    // scalars render on one line; nested arrays/objects get one line each.
    std::string to_json() const;

    // The table when set, else "key,value" rows over the flattened tree
    // (dotted paths, bracketed array indices).  Trailing newline.
    std::string to_csv() const;

  private:
    enum class Kind { Null, Bool, Int, UInt, Double, String, Array, Object };

    Kind kind_ = Kind::Null;
    bool bool_ = false;
    long long int_ = 0;
    std::uint64_t uint_ = 0;
    double double_ = 0.0;
    std::string string_;
    std::vector<Report> items_;                            // Array
    std::vector<std::pair<std::string, Report>> fields_;   // Object
    std::vector<std::string> table_header_;
    std::vector<std::vector<std::string>> table_rows_;

    bool scalar() const { return kind_ != Kind::Array && kind_ != Kind::Object; }
    void write_json(std::string& out, int indent) const;
    void write_scalar(std::string& out) const;
    void flatten(const std::string& path, std::vector<std::pair<std::string, std::string>>& out) const;
};

// Whole-file text I/O wrapping filesystem failures in IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace blaschke2d
