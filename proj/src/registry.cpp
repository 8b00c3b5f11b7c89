#include "cuntz/registry.hpp"

#include <memory>
#include <stdexcept>

#include "cuntz/limits.hpp"
#include "cuntz/lsc.hpp"
#include "cuntz/models.hpp"
#include "cuntz/wtilde.hpp"

namespace cuntz {

namespace {

std::vector<std::uint64_t> parseUintList(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
    if (piece.empty()) throw std::invalid_argument("empty entry in '" + s + "'");
    out.push_back(std::stoull(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ModelPtr modelByName(const std::string& name) {
  if (name == "extnat") return std::make_shared<ExtNatModel>();
  if (name == "twopoint") return std::make_shared<TwoPointModel>();
  if (name == "calkin") return std::make_shared<CalkinModel>();
  if (name == "lsc-step") return std::make_shared<StepLscModel>();
  if (name == "goodearl") return goodearlModel();
  if (name == "rotation") return rotationModel();
  if (name == "whk") return whkModel();
  if (name == "laff") return laffModel();
  if (name == "wtilde-goodearl") return functorF(goodearlElliott());
  if (name == "wtilde-rotation") return functorF(rotationElliott());
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string head = name.substr(0, colon);
    std::string args = name.substr(colon + 1);
    try {
      if (head == "subsemigroup")
        return std::make_shared<SubsemigroupModel>(parseUintList(args));
      if (head == "intervals") return rr0IntervalModel(std::stoull(args));
      if (head == "tuples") return std::make_shared<ExtNatTupleModel>(std::stoull(args));
      if (head == "uhf") return buildLimit(uhfSystem(std::stoull(args)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad model arguments '" + name + "'");
    }
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::vector<std::string> modelNames() {
  return {"extnat",  "twopoint",        "calkin",          "lsc-step",
          "goodearl", "rotation",        "whk",             "laff",
          "wtilde-goodearl", "wtilde-rotation", "subsemigroup:2,3", "intervals:2",
          "tuples:3", "uhf:2"};
}

}  // namespace cuntz
