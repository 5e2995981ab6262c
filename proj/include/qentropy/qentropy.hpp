#pragma once

#include <qentropy/density.hpp>
#include <qentropy/ensemble.hpp>
#include <qentropy/entropy.hpp>
#include <qentropy/error.hpp>
#include <qentropy/game.hpp>
#include <qentropy/jacobi.hpp>
#include <qentropy/matrix.hpp>
#include <qentropy/root_finding.hpp>
