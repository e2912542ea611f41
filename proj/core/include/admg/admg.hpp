#pragma once

#include "admg/docalc.hpp"
#include "admg/error.hpp"
#include "admg/graph.hpp"
#include "admg/graph_io.hpp"
#include "admg/learner.hpp"
#include "admg/markov.hpp"
#include "admg/node_set.hpp"
#include "admg/sem.hpp"
#include "admg/separation.hpp"
