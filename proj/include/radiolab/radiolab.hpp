#pragma once

#include "radiolab/analytic.hpp"
#include "radiolab/bits.hpp"
#include "radiolab/broadcast.hpp"
#include "radiolab/error.hpp"
#include "radiolab/instance.hpp"
#include "radiolab/model.hpp"
#include "radiolab/netio.hpp"
#include "radiolab/parallel.hpp"
#include "radiolab/random.hpp"
#include "radiolab/verifier.hpp"
