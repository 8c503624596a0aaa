int f() {
  int* p = malloc(4);
  free(p);
  *p = 1; // <- use-after-free
  return 0;
}
