#pragma once

#include "plumbing/contour.hpp"
#include "plumbing/counterexample.hpp"
#include "plumbing/error.hpp"
#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"
#include "plumbing/sampling.hpp"
#include "plumbing/version.hpp"
