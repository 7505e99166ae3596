#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stabcat {

enum class Verdict { pass, fail, undecided };
const char* to_string(Verdict v);

/// A failing or undecided instance with the matrices that exhibit it.
struct Witness {
  std::string instance;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> matrices;  // label, matrix literal
};

struct CheckRow {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t undecided = 0;
  std::vector<Witness> witnesses;  // capped at kMaxWitnesses

  static constexpr std::size_t kMaxWitnesses = 5;

  Verdict verdict() const;
  void pass() { ++instances; }
  void fail(Witness w);
  void undecide(Witness w);
  /// pass() or fail(w) depending on ok.
  void record(bool ok, const Witness& w);
};

/// Ordered collection of check rows. Rows are kept sorted by name so the
/// output is independent of the order checks ran in.
class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  CheckRow& row(const std::string& name);
  const CheckRow* find(const std::string& name) const;
  const std::vector<CheckRow>& rows() const { return rows_; }

  /// fail if any row fails, else undecided if any row is undecided.
  Verdict verdict() const;
  void merge(const Report& other);

 private:
  std::string title_;
  std::vector<CheckRow> rows_;
};

}  // namespace stabcat
