#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabcat/module.hpp"

namespace stabcat {

/// Malformed or inconsistent input. `line` is 1-based, 0 when not tied to
/// a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NamedMorphism {
  std::string name;
  std::string src;
  std::string dst;
  Morphism map;
};

struct ClassDecl {
  std::string name;
  std::vector<std::string> members;
};

struct ContextDecl {
  std::string name;
  std::string generator;
  std::string universe;  // class name
};

/// Parsed contents of a .rep file.
///
///   field <p>
///   generators <g>
///   relation <i> <j> ...           (optional; the word must act as zero)
///   module <name> dim <d>
///   gen <i>: [[...],[...]]         (g lines, one per generator)
///   morphism <name> : <src> -> <dst>
///   [[...]]                        (may span lines)
///   class <name> = <mod>, <mod>, ...
///   context <name> W=<mod> universe=<class>
///
/// '#' starts a comment.
struct RepFile {
  PrimeField field{2};
  std::size_t generators = 1;
  std::vector<Word> relations;
  std::vector<Module> modules;
  std::vector<NamedMorphism> morphisms;
  std::vector<ClassDecl> classes;
  std::vector<ContextDecl> contexts;

  bool has_module(std::string_view name) const;
  bool has_morphism(std::string_view name) const;
  bool has_class(std::string_view name) const;
  const Module& module(std::string_view name) const;
  const NamedMorphism& morphism(std::string_view name) const;
  const ClassDecl& class_decl(std::string_view name) const;
  const ContextDecl& context(std::string_view name) const;
  std::vector<Module> class_members(std::string_view name) const;

  friend bool operator==(const RepFile& a, const RepFile& b);
};

RepFile parse_repfile(std::string_view text);
std::string serialize(const RepFile& rf);

/// Matrix literal such as [[1,0],[0,1]]; `[]` is a matrix with no rows.
std::string matrix_literal(const Mat& m);

}  // namespace stabcat
