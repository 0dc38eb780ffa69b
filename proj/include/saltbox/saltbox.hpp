#pragma once

#include "saltbox/errors.hpp"
#include "saltbox/family.hpp"
#include "saltbox/numverify.hpp"
#include "saltbox/rng.hpp"
#include "saltbox/roof.hpp"
#include "saltbox/truncation.hpp"
