public class Example {
  public static void main(String[] args) {
    int n = ;
    while(0 < n) {
      n = n - 1;
    }
    System.out.println(n);
  }
}
