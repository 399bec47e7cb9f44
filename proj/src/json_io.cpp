#include "lfasym/json_io.hpp"

#include <stdexcept>

namespace lfasym::series1d {

namespace {

std::string kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::one_sided: return "one_sided";
    case DomainKind::two_sided: return "two_sided";
    case DomainKind::real_line: return "real_line";
  }
  throw std::logic_error("unreachable");
}

DomainKind kind_from_name(const std::string& s) {
  if (s == "one_sided") return DomainKind::one_sided;
  if (s == "two_sided") return DomainKind::two_sided;
  if (s == "real_line") return DomainKind::real_line;
  throw std::domain_error("ExpansionSpec1D: unknown domain kind '" + s + "'");
}

}  // namespace

void to_json(nlohmann::json& j, const ExpansionSpec1D& spec) {
  nlohmann::json dom;
  dom["kind"] = kind_name(spec.domain.kind);
  switch (spec.domain.kind) {
    case DomainKind::one_sided:
      dom["b"] = spec.domain.b;
      break;
    case DomainKind::two_sided:
      dom["b1"] = spec.domain.b1;
      dom["b2"] = spec.domain.b2;
      break;
    case DomainKind::real_line:
      break;
  }
  j = nlohmann::json{{"alpha", spec.alpha},
                     {"beta", spec.beta},
                     {"a", spec.a},
                     {"f_crit", spec.f_crit},
                     {"domain", dom}};
}

void from_json(const nlohmann::json& j, ExpansionSpec1D& spec) {
  spec.alpha = j.at("alpha").get<double>();
  spec.beta = j.at("beta").get<double>();
  spec.a = j.at("a").get<std::vector<double>>();
  spec.f_crit = j.at("f_crit").get<double>();
  const auto& dom = j.at("domain");
  const auto kind = kind_from_name(dom.at("kind").get<std::string>());
  switch (kind) {
    case DomainKind::one_sided:
      spec.domain = Domain::one_sided(dom.at("b").get<double>());
      break;
    case DomainKind::two_sided:
      spec.domain = Domain::two_sided(dom.at("b1").get<double>(),
                                      dom.at("b2").get<double>());
      break;
    case DomainKind::real_line:
      spec.domain = Domain::real_line();
      break;
  }
  spec.validate();
}

}  // namespace lfasym::series1d

namespace lfasym::multidim {

void to_json(nlohmann::json& j, const HessianModel& model) {
  const auto data = model.A.data();
  j = nlohmann::json{{"d", model.d},
                     {"f0", model.f0},
                     {"A", std::vector<double>(data.begin(), data.end())}};
}

void from_json(const nlohmann::json& j, HessianModel& model) {
  model.d = j.at("d").get<int>();
  model.f0 = j.at("f0").get<double>();
  const auto values = j.at("A").get<std::vector<double>>();
  model.A = Matrix::from_row_major(model.d, values);
  model.validate();
}

}  // namespace lfasym::multidim
