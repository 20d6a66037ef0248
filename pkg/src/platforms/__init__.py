"""平台适配器包"""
