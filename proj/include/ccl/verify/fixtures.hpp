#pragma once

#include <string>
#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/randomized/randomized.hpp"
#include "ccl/tarui/tarui.hpp"

// Constructed instances with known exact answers.
namespace ccl::fixtures {

// Three equally likely table protocols; member r is wrong exactly on the
// cells with row-major index = r (mod 3). Error exactly 1/3 when f has
// at least 3 cells.
RandomizedPPProtocol one_third_error(const BooleanMatrix& f);

struct PipelineFixture {
  std::string name;
  tarui::RandomizedRectanglePolynomial rphi;
  BooleanMatrix target;
};

// "or2": [A1 x B1] + [A2 x B2] - [A1&A2 x B1&B2] on 4x4, error 0.
// "and": the single cell (3, 3) on 4x4, error 0.
// "boundary": L = [x >= y] on 4x4; member i is 2[L with row i flipped] - 1,
//             each with probability 1/3, so rows 0-2 err with probability 1/3.
PipelineFixture pipeline_fixture(const std::string& name);
std::vector<std::string> pipeline_fixture_names();

}  // namespace ccl::fixtures
