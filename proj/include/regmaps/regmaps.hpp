#pragma once

#include "regmaps/enumerate.hpp"
#include "regmaps/field.hpp"
#include "regmaps/oracle.hpp"
#include "regmaps/projective.hpp"
#include "regmaps/report.hpp"
#include "regmaps/symmetry.hpp"
#include "regmaps/triples.hpp"
