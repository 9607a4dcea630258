#pragma once

#include "gerry/error.hpp"
#include "gerry/rational.hpp"
#include "gerry/model.hpp"
#include "gerry/validity.hpp"
#include "gerry/metrics.hpp"
#include "gerry/objective.hpp"
#include "gerry/enumerator.hpp"
#include "gerry/optimizer.hpp"
#include "gerry/gadgets/partition.hpp"
#include "gerry/gadgets/verdict.hpp"
#include "gerry/gadgets/seatvote.hpp"
#include "gerry/gadgets/mis.hpp"
#include "gerry/gadgets/transforms.hpp"
#include "gerry/io.hpp"
