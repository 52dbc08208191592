#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morphocat/error.hpp"
#include "morphocat/feature_structure.hpp"
#include "morphocat/operator.hpp"

namespace morphocat {

// Closed feature vocabularies.
namespace vocabulary {
inline const std::set<std::string> g_sign = {"cat", "nprop", "vprop", "restr"};
inline const std::set<std::string> nprop = {"person", "number", "poss", "case", "relative", "form"};
inline const std::set<std::string> vprop = {"reflexive", "reciprocal", "causative", "passive",
                                            "tense",     "modal",      "aspect",    "person",
                                            "form"};
inline const std::set<std::string> s_sign = {"type", "form", "restr"};
inline const std::set<std::string> p_sign = {"syn", "sem"};
inline const std::set<std::string> f_sign = {"res", "op", "arg"};
}  // namespace vocabulary

// A syntactic category: a p-sign (basic) or f-sign (functor) feature
// structure. Basic: [p| syn: [g| cat: n, nprop: [...], restr: <...>], sem: [s| ...]].
// Functor: [f| res: <category>, op: <operator>, arg: <category>].
class Category {
 public:
  Category() : Category(basic("n")) {}

  explicit Category(FeatureStructure fs) : fs_(std::move(fs)) {
    if (fs_.sign != Sign::P && fs_.sign != Sign::F)
      throw Error("a category must be a p- or f-sign structure");
  }

  static Category basic(const std::string& name, FeatureStructure syn_extra = FeatureStructure(Sign::G),
                        std::optional<FeatureStructure> sem = std::nullopt) {
    FeatureStructure syn = std::move(syn_extra);
    syn.sign = Sign::G;
    syn.features.insert_or_assign("cat", atom(name));
    FeatureStructure p(Sign::P);
    p.features.emplace("syn", box(std::move(syn)));
    if (sem) p.features.emplace("sem", box(std::move(*sem)));
    return Category(std::move(p));
  }

  static Category functor(const Category& res, const Operator& op, const Category& arg) {
    FeatureStructure f(Sign::F);
    f.features.emplace("res", box(res.fs_));
    f.features.emplace("op", FeatureValue(op));
    f.features.emplace("arg", box(arg.fs_));
    return Category(std::move(f));
  }

  bool is_functor() const { return fs_.sign == Sign::F; }
  const FeatureStructure& fs() const { return fs_; }

  Category result() const { return Category(part("res")); }
  Category argument() const { return Category(part("arg")); }
  Operator op() const {
    const FeatureValue* v = fs_.find("op");
    if (!v || !v->is<Operator>()) throw Error("functor category without an operator");
    return v->as<Operator>();
  }

  // Innermost result.
  Category head() const {
    Category c = *this;
    while (c.is_functor()) c = c.result();
    return c;
  }

  // Basic category name (n, s, ...); empty for functors.
  std::string name() const {
    if (is_functor()) return {};
    const FeatureStructure* syn = fs_.sub("syn");
    const FeatureValue* cat = syn ? syn->find("cat") : nullptr;
    return cat && cat->is<Atomic>() ? cat->as<Atomic>().symbol : std::string("?");
  }

  // Conditions in syn.restr and sem.restr of the head basic category.
  std::set<std::string> restr_conditions() const {
    std::set<std::string> out;
    Category h = head();
    for (const char* block : {"syn", "sem"}) {
      const FeatureStructure* b = h.fs_.sub(block);
      const FeatureValue* r = b ? b->find("restr") : nullptr;
      if (r && r->is<RestrList>())
        out.insert(r->as<RestrList>().conditions.begin(), r->as<RestrList>().conditions.end());
    }
    return out;
  }

  // Slash notation without features: ((s\n)/(s\n))\n
  std::string display() const {
    if (!is_functor()) return name();
    auto wrap = [](const Category& c) {
      return c.is_functor() ? "(" + c.display() + ")" : c.display();
    };
    return wrap(result()) + slash_char(op().direction) + wrap(argument());
  }

  // Same skeleton: basic names and slash directions agree, features ignored.
  bool same_shape(const Category& other) const {
    if (is_functor() != other.is_functor()) return false;
    if (!is_functor()) return name() == other.name();
    return op().direction == other.op().direction && result().same_shape(other.result()) &&
           argument().same_shape(other.argument());
  }

  friend bool operator==(const Category& a, const Category& b) { return a.fs_ == b.fs_; }

 private:
  FeatureStructure part(const char* name) const {
    const FeatureStructure* s = fs_.sub(name);
    if (!s) throw Error(std::string("functor category without ") + name);
    return *s;
  }

  FeatureStructure fs_;
};

// Category with every tag renumbered 1.. in order of first appearance, so that
// two structurally identical categories from different instantiations compare
// equal as strings.
inline std::string canonical(const Category& c) {
  std::map<int, int> renumber;
  auto rename = [&](int id) {
    auto [it, inserted] = renumber.emplace(id, static_cast<int>(renumber.size()) + 1);
    return it->second;
  };
  return to_string(map_tags(c.fs(), rename));
}

}  // namespace morphocat
