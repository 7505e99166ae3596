#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stabcat/approx.hpp"
#include "stabcat/repfile.hpp"

namespace stabcat {

/// Names of the bundled fixtures: F1 = k[x]/(x^2) over GF(2),
/// F2 = k[x]/(x^3) over GF(2), F3 = k[x]/(x^2) over GF(3).
std::vector<std::string> fixture_names();
/// Source text of a bundled fixture. Throws UnknownName.
std::string_view fixture_text(std::string_view name);
RepFile load_fixture(std::string_view name);

/// Context declared in the file under `name`.
std::shared_ptr<ApproxContext> make_context(const RepFile& rf, std::string_view name);

struct Fixture {
  RepFile file;
  std::shared_ptr<ApproxContext> ctx;  // the context named "main"

  const Module& mod(std::string_view name) const { return file.module(name); }
  const Morphism& map(std::string_view name) const { return file.morphism(name).map; }
};

Fixture open_fixture(std::string_view name);

}  // namespace stabcat
