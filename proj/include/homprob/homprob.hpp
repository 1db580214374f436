#pragma once

#include "homprob/ce.hpp"
#include "homprob/chain.hpp"
#include "homprob/cone.hpp"
#include "homprob/gaussian.hpp"
#include "homprob/graded_poly.hpp"
#include "homprob/json_io.hpp"
#include "homprob/linalg.hpp"
#include "homprob/partitions.hpp"
#include "homprob/poly_io.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"
#include "homprob/sym.hpp"
#include "homprob/truncated.hpp"
