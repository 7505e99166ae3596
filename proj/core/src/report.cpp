#include "stabcat/report.hpp"

#include <algorithm>

namespace stabcat {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "undecided";
  }
}

Verdict CheckRow::verdict() const {
  if (failures) return Verdict::fail;
  if (undecided) return Verdict::undecided;
  return Verdict::pass;
}

void CheckRow::fail(Witness w) {
  ++instances;
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

void CheckRow::undecide(Witness w) {
  ++instances;
  ++undecided;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

void CheckRow::record(bool ok, const Witness& w) {
  if (ok)
    pass();
  else
    fail(w);
}

CheckRow& Report::row(const std::string& name) {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), name,
                             [](const CheckRow& r, const std::string& n) { return r.name < n; });
  if (it != rows_.end() && it->name == name) return *it;
  CheckRow r;
  r.name = name;
  return *rows_.insert(it, std::move(r));
}

const CheckRow* Report::find(const std::string& name) const {
  for (const auto& r : rows_)
    if (r.name == name) return &r;
  return nullptr;
}

Verdict Report::verdict() const {
  bool und = false;
  for (const auto& r : rows_) {
    if (r.verdict() == Verdict::fail) return Verdict::fail;
    if (r.verdict() == Verdict::undecided) und = true;
  }
  return und ? Verdict::undecided : Verdict::pass;
}

void Report::merge(const Report& other) {
  for (const auto& r : other.rows_) {
    CheckRow& mine = row(r.name);
    mine.instances += r.instances;
    mine.failures += r.failures;
    mine.undecided += r.undecided;
    for (const auto& w : r.witnesses)
      if (mine.witnesses.size() < CheckRow::kMaxWitnesses) mine.witnesses.push_back(w);
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

}  // namespace stabcat
