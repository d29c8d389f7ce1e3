#pragma once

#include "decide.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "hat.hpp"
#include "integral.hpp"
#include "rep.hpp"
#include "rng.hpp"
#include "sample.hpp"
#include "semilattice.hpp"
#include "weyl.hpp"
#include "word.hpp"
