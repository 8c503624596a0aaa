int f() {
  int* p = 0;
  *p = 1; // <- null-deref
  return 0;
}
