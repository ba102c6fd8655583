#include "ncause/values.hpp"

#include <algorithm>
#include <cctype>

#include "ncause/error.hpp"

namespace ncause {

struct ValueDomain::Data {
  std::string name;
  std::vector<std::pair<std::string, Style>> cases;
  bool isBool = false;
};

namespace {

std::string toLower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

ValueDomain::ValueDomain(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

ValueDomain ValueDomain::boolean() {
  static const std::shared_ptr<const Data> data = [] {
    auto d = std::make_shared<Data>();
    d->name = "Bool";
    d->cases = {{"False", Style{}}, {"True", fillWith("gray")}};
    d->isBool = true;
    return d;
  }();
  return ValueDomain(data);
}

ValueDomain ValueDomain::declare(
    std::string name, std::vector<std::pair<std::string, Style>> cases) {
  if (cases.size() < 2) {
    fail(ErrorCode::EmptyDomain,
         "domain '" + name + "' needs at least two cases");
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (std::size_t j = i + 1; j < cases.size(); ++j) {
      if (cases[i].first == cases[j].first) {
        fail(ErrorCode::DuplicateCase, "duplicate case '" + cases[i].first +
                                           "' in domain '" + name + "'");
      }
    }
  }
  auto d = std::make_shared<Data>();
  d->name = std::move(name);
  d->cases = std::move(cases);
  return ValueDomain(std::move(d));
}

const std::string& ValueDomain::name() const { return data_->name; }

std::size_t ValueDomain::size() const { return data_->cases.size(); }

const std::string& ValueDomain::caseName(std::size_t index) const {
  return data_->cases.at(index).first;
}

const Style& ValueDomain::caseStyle(std::size_t index) const {
  return data_->cases.at(index).second;
}

Value ValueDomain::value(std::size_t index) const {
  if (index >= size()) {
    fail(ErrorCode::UnknownCase, "case index " + std::to_string(index) +
                                     " out of range for domain '" +
                                     data_->name + "'");
  }
  return Value(*this, index);
}

Value ValueDomain::neutral() const { return Value(*this, 0); }

std::vector<Value> ValueDomain::enumerate() const {
  std::vector<Value> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(*this, i);
  return out;
}

Value ValueDomain::parse(const std::string& text) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (data_->cases[i].first == text) return Value(*this, i);
  }
  if (data_->isBool) {
    std::string low = toLower(text);
    if (low == "false") return Value(*this, 0);
    if (low == "true") return Value(*this, 1);
  }
  fail(ErrorCode::UnknownCase,
       "'" + text + "' is not a case of domain '" + data_->name + "'");
}

bool ValueDomain::isBoolean() const { return data_->isBool; }

bool ValueDomain::operator==(const ValueDomain& other) const {
  if (data_ == other.data_) return true;
  return data_->name == other.data_->name && data_->cases == other.data_->cases;
}

Value::Value(ValueDomain domain, std::size_t index)
    : domain_(std::move(domain)), index_(index) {}

const std::string& Value::name() const { return domain_.caseName(index_); }

bool Value::operator==(const Value& other) const {
  return index_ == other.index_ && domain_ == other.domain_;
}

Value boolValue(bool b) {
  return Value(ValueDomain::boolean(), b ? 1u : 0u);
}

bool asBool(const Value& v) {
  if (!v.domain().isBoolean()) {
    fail(ErrorCode::DomainMismatch,
         "value '" + v.name() + "' is not boolean");
  }
  return v.index() == 1;
}

}  // namespace ncause
