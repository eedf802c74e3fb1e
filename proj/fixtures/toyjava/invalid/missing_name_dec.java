public class Example {
  public static void main(String[] args) {
    int = 5;
    while(0 < n) {
      n = n - 1;
    }
    System.out.println(n);
  }
}
