#pragma once

#include "igame/config.hpp"
#include "igame/controls.hpp"
#include "igame/discretization.hpp"
#include "igame/dispersion.hpp"
#include "igame/experiments.hpp"
#include "igame/game.hpp"
#include "igame/games.hpp"
#include "igame/geometry.hpp"
#include "igame/io.hpp"
#include "igame/kruzkov.hpp"
#include "igame/lattice.hpp"
#include "igame/multigrid.hpp"
#include "igame/operator.hpp"
#include "igame/policy.hpp"
#include "igame/random.hpp"
#include "igame/sample_cloud.hpp"
#include "igame/schedule.hpp"
#include "igame/solver.hpp"
#include "igame/uniform_grid.hpp"
#include "igame/value_field.hpp"
