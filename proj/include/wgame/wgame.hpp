#pragma once

#include "wgame/algebra.hpp"
#include "wgame/closedloop.hpp"
#include "wgame/error.hpp"
#include "wgame/gallery.hpp"
#include "wgame/model.hpp"
#include "wgame/ordering.hpp"
#include "wgame/randomized.hpp"
#include "wgame/rational.hpp"
#include "wgame/recall.hpp"
#include "wgame/strategy.hpp"
