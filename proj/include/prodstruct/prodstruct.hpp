#pragma once

#include "prodstruct/errors.hpp"
#include "prodstruct/graph.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/decomposition.hpp"
#include "prodstruct/separators.hpp"
#include "prodstruct/partition.hpp"
#include "prodstruct/expansion.hpp"
#include "prodstruct/weighted.hpp"
#include "prodstruct/instances.hpp"
#include "prodstruct/certificate.hpp"
#include "prodstruct/bench.hpp"
