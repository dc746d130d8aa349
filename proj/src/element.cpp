#include "manyone/finrel.hpp"

#include <cctype>

namespace manyone {

Obj make_atom(std::string name, std::vector<std::string> labels) {
  auto node = std::make_shared<ObjNode>();
  node->kind = ObjKind::atom;
  node->size = labels.size();
  node->text = name;
  node->name = std::move(name);
  node->labels = std::make_shared<const std::vector<std::string>>(std::move(labels));
  return node;
}

namespace {

Obj binary(ObjKind kind, Obj left, Obj right) {
  auto node = std::make_shared<ObjNode>();
  node->kind = kind;
  node->size = kind == ObjKind::prod ? left->size * right->size : left->size + right->size;
  node->depth = 1 + std::max(left->depth, right->depth);
  node->text = "(" + left->text + (kind == ObjKind::prod ? " * " : " + ") + right->text + ")";
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

}  // namespace

Obj prod(Obj left, Obj right) { return binary(ObjKind::prod, std::move(left), std::move(right)); }
Obj coprod(Obj left, Obj right) { return binary(ObjKind::coprod, std::move(left), std::move(right)); }

Obj AtomEnv::declare(const std::string& name, std::vector<std::string> labels) {
  if (by_name_.contains(name)) throw Error("duplicate atom name '" + name + "'");
  auto atom = make_atom(name, std::move(labels));
  by_name_.emplace(name, atom);
  order_.push_back(atom);
  return atom;
}

Obj AtomEnv::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

Element Element::atom(std::string label) {
  Element e;
  e.kind = Kind::atom;
  e.label = std::move(label);
  return e;
}

Element Element::pair(Element a, Element b) {
  Element e;
  e.kind = Kind::pair;
  e.parts = {std::move(a), std::move(b)};
  return e;
}

Element Element::tag(int side, Element inner) {
  Element e;
  e.kind = Kind::tag;
  e.side = side;
  e.parts = {std::move(inner)};
  return e;
}

std::string format_element(const Element& e) {
  switch (e.kind) {
    case Element::Kind::atom:
      return e.label;
    case Element::Kind::pair:
      return "<" + format_element(e.parts[0]) + "," + format_element(e.parts[1]) + ">";
    case Element::Kind::tag:
      return std::to_string(e.side) + ":" + format_element(e.parts[0]);
  }
  return {};
}

namespace {

bool label_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '<' && c != '>' && c != ',' &&
         c != ':' && c != '[' && c != ']' && c != '(' && c != ')';
}

void skip_ws(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

}  // namespace

Element parse_element_at(const std::string& text, std::size_t& pos) {
  skip_ws(text, pos);
  if (pos >= text.size()) throw Error("element expected at position " + std::to_string(pos));
  if (text[pos] == '<') {
    ++pos;
    Element a = parse_element_at(text, pos);
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != ',')
      throw Error("',' expected in element at position " + std::to_string(pos));
    ++pos;
    Element b = parse_element_at(text, pos);
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != '>')
      throw Error("'>' expected in element at position " + std::to_string(pos));
    ++pos;
    return Element::pair(std::move(a), std::move(b));
  }
  if ((text[pos] == '1' || text[pos] == '2') && pos + 1 < text.size() && text[pos + 1] == ':') {
    int side = text[pos] - '0';
    pos += 2;
    return Element::tag(side, parse_element_at(text, pos));
  }
  std::size_t start = pos;
  while (pos < text.size() && label_char(text[pos])) ++pos;
  if (pos == start) throw Error("element expected at position " + std::to_string(pos));
  return Element::atom(text.substr(start, pos - start));
}

Element parse_element(const std::string& text) {
  std::size_t pos = 0;
  Element e = parse_element_at(text, pos);
  skip_ws(text, pos);
  if (pos != text.size())
    throw Error("trailing input after element at position " + std::to_string(pos));
  return e;
}

Element element_at(const Obj& obj, std::size_t index) {
  switch (obj->kind) {
    case ObjKind::atom:
      return Element::atom((*obj->labels)[index]);
    case ObjKind::prod: {
      std::size_t r = obj->right->size;
      return Element::pair(element_at(obj->left, index / r), element_at(obj->right, index % r));
    }
    case ObjKind::coprod:
      if (index < obj->left->size) return Element::tag(1, element_at(obj->left, index));
      return Element::tag(2, element_at(obj->right, index - obj->left->size));
  }
  return {};
}

std::optional<std::size_t> index_of(const Obj& obj, const Element& e) {
  switch (obj->kind) {
    case ObjKind::atom: {
      if (e.kind != Element::Kind::atom) return std::nullopt;
      const auto& labels = *obj->labels;
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == e.label) return i;
      return std::nullopt;
    }
    case ObjKind::prod: {
      if (e.kind != Element::Kind::pair) return std::nullopt;
      auto a = index_of(obj->left, e.parts[0]);
      auto b = index_of(obj->right, e.parts[1]);
      if (!a || !b) return std::nullopt;
      return *a * obj->right->size + *b;
    }
    case ObjKind::coprod: {
      if (e.kind != Element::Kind::tag) return std::nullopt;
      if (e.side == 1) return index_of(obj->left, e.parts[0]);
      auto b = index_of(obj->right, e.parts[0]);
      if (!b) return std::nullopt;
      return obj->left->size + *b;
    }
  }
  return std::nullopt;
}

std::size_t require_index(const Obj& obj, const Element& e) {
  auto idx = index_of(obj, e);
  if (!idx)
    throw TypeError("element " + format_element(e) + " is not valid for object " + obj->text);
  return *idx;
}

}  // namespace manyone
