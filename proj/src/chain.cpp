#include "cfcycles/chain.hpp"

#include <sstream>

namespace cfcycles {

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks)
    out << "link " << c.link << " " << c.name << " " << c.residual << " "
        << (c.pass ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace cfcycles
