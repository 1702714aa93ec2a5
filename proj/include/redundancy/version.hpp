#pragma once

#define REDUNDANCY_VERSION "0.1.0"
