"""核心功能包"""
