#pragma once

#include "dspec/enumerate.hpp"
#include "dspec/errors.hpp"
#include "dspec/extremal.hpp"
#include "dspec/graph.hpp"
#include "dspec/graph_io.hpp"
#include "dspec/partitions.hpp"
#include "dspec/phi_psi.hpp"
#include "dspec/report.hpp"
#include "dspec/spectral.hpp"
#include "dspec/walks.hpp"
