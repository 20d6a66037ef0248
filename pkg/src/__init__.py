"""condlin: 条件可线性化高阶常微分方程的精确符号判定"""
